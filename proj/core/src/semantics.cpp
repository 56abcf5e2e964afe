#include <optional>
#include <stdexcept>

#include "odfkit/semantics.hpp"

namespace odfkit {

namespace {

struct Evaluator {
  const Structure& s;
  Assignment env;

  bool eval(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::True:
        return true;
      case FKind::False:
        return false;
      case FKind::UnaryAtom:
        return s.hasLabel(at(f->v1), f->pred);
      case FKind::NavAtom:
        return s.navHolds(f->rel, at(f->v1), at(f->v2));
      case FKind::Eq:
        return at(f->v1) == at(f->v2);
      case FKind::Not:
        return !eval(f->kids[0]);
      case FKind::And:
        return eval(f->kids[0]) && eval(f->kids[1]);
      case FKind::Or:
        return eval(f->kids[0]) || eval(f->kids[1]);
      case FKind::Exists:
        return block(f, 0, true);
      case FKind::Forall:
        return block(f, 0, false);
      case FKind::CountGe:
      case FKind::CountLe: {
        unsigned count = 0;
        auto saved = save(f->v1);
        for (int e = 0; e < (int)s.size(); ++e) {
          env[f->v1] = e;
          if (eval(f->kids[0])) {
            ++count;
            if (count > f->threshold) break;
          }
        }
        restore(f->v1, saved);
        return f->kind == FKind::CountGe ? count >= f->threshold
                                         : count <= f->threshold;
      }
    }
    return false;
  }

  int at(const std::string& v) {
    auto it = env.find(v);
    if (it == env.end())
      throw std::runtime_error("unassigned free variable '" + v + "'");
    return it->second;
  }

  // Shadowed outer bindings are restored when a block is left.
  std::optional<int> save(const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) return std::nullopt;
    return it->second;
  }

  void restore(const std::string& v, const std::optional<int>& saved) {
    if (saved)
      env[v] = *saved;
    else
      env.erase(v);
  }

  bool block(const FormulaPtr& f, size_t i, bool existential) {
    if (i == f->vars.size()) return eval(f->kids[0]);
    auto saved = save(f->vars[i]);
    for (int e = 0; e < (int)s.size(); ++e) {
      env[f->vars[i]] = e;
      bool v = block(f, i + 1, existential);
      if (v == existential) {
        restore(f->vars[i], saved);
        return existential;
      }
    }
    restore(f->vars[i], saved);
    return !existential;
  }
};

bool vertical(Dir d) {
  return d == Dir::down || d == Dir::up || d == Dir::downPlus ||
         d == Dir::upPlus;
}

}  // namespace

bool evalFO(const Structure& s, const FormulaPtr& f, const Assignment& asg) {
  Evaluator ev{s, asg};
  return ev.eval(f);
}

bool evalModal(const Structure& s, const ModalPtr& m, int at) {
  switch (m->kind) {
    case MKind::Prop:
      return s.hasLabel(at, m->prop);
    case MKind::True:
      return true;
    case MKind::False:
      return false;
    case MKind::Not:
      return !evalModal(s, m->kids[0], at);
    case MKind::And:
      return evalModal(s, m->kids[0], at) && evalModal(s, m->kids[1], at);
    case MKind::Or:
      return evalModal(s, m->kids[0], at) || evalModal(s, m->kids[1], at);
    case MKind::Diamond:
    case MKind::Box: {
      if (vertical(m->dir) && s.cls != StructureClass::tree)
        throw std::runtime_error("vertical modality on a non-tree structure");
      bool isBox = m->kind == MKind::Box;
      for (int b = 0; b < (int)s.size(); ++b) {
        bool step = false;
        switch (m->dir) {
          case Dir::down: step = s.navHolds(Rel::succv, at, b); break;
          case Dir::up: step = s.navHolds(Rel::succv, b, at); break;
          case Dir::downPlus: step = s.navHolds(Rel::lessv, at, b); break;
          case Dir::upPlus: step = s.navHolds(Rel::lessv, b, at); break;
          case Dir::right: step = s.navHolds(Rel::succh, at, b); break;
          case Dir::left: step = s.navHolds(Rel::succh, b, at); break;
          case Dir::rightPlus: step = s.navHolds(Rel::lessh, at, b); break;
          case Dir::leftPlus: step = s.navHolds(Rel::lessh, b, at); break;
        }
        if (!step) continue;
        bool v = evalModal(s, m->kids[0], b);
        if (!isBox && v) return true;
        if (isBox && !v) return false;
      }
      return isBox;
    }
  }
  return false;
}

}  // namespace odfkit
