#include <stdexcept>

#include "odfkit/translate.hpp"

namespace odfkit {

namespace {

// Relation atom expressing "cur steps to nxt along d".
FormulaPtr stepAtom(Dir d, const std::string& cur, const std::string& nxt) {
  switch (d) {
    case Dir::down: return fNav(Rel::succv, cur, nxt);
    case Dir::up: return fNav(Rel::succv, nxt, cur);
    case Dir::downPlus: return fNav(Rel::lessv, cur, nxt);
    case Dir::upPlus: return fNav(Rel::lessv, nxt, cur);
    case Dir::right: return fNav(Rel::succh, cur, nxt);
    case Dir::left: return fNav(Rel::succh, nxt, cur);
    case Dir::rightPlus: return fNav(Rel::lessh, cur, nxt);
    case Dir::leftPlus: return fNav(Rel::lessh, nxt, cur);
  }
  throw std::logic_error("unknown direction");
}

FormulaPtr st(const ModalPtr& m, const std::string& cur, const std::string& other) {
  switch (m->kind) {
    case MKind::True: return fTrue();
    case MKind::False: return fFalse();
    case MKind::Prop: return fAtom(m->prop, cur);
    case MKind::Not: return fNot(st(m->kids[0], cur, other));
    case MKind::And:
      return fAnd(st(m->kids[0], cur, other), st(m->kids[1], cur, other));
    case MKind::Or:
      return fOr(st(m->kids[0], cur, other), st(m->kids[1], cur, other));
    case MKind::Diamond:
      return fExists({other}, fAnd(stepAtom(m->dir, cur, other),
                                   st(m->kids[0], other, cur)));
    case MKind::Box:
      return fForall({other}, fOr(fNot(stepAtom(m->dir, cur, other)),
                                  st(m->kids[0], other, cur)));
  }
  throw std::logic_error("unknown modal node");
}

}  // namespace

FormulaPtr standardTranslation(const ModalPtr& m, const std::string& freeVar) {
  std::string other = freeVar + "_st";
  return st(m, freeVar, other);
}

}  // namespace odfkit
