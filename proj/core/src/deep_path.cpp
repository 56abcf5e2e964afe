#include <stdexcept>
#include <string>

#include "odfkit/reductions.hpp"

namespace odfkit {

namespace {

FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return fOr(fNot(a), b); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  return fAnd(imp(a, b), imp(b, a));
}

FormulaPtr child(const char* a, const char* b) {
  return fNav(Rel::succv, a, b);
}

FormulaPtr bit(unsigned i, const char* v) {
  return fAtom("P" + std::to_string(i), v);
}

// a and b sit at the same local position
FormulaPtr posEq(unsigned n, const char* a, const char* b) {
  std::vector<FormulaPtr> cs;
  for (unsigned i = 0; i < n; ++i) cs.push_back(iff(bit(i, a), bit(i, b)));
  return fConj(cs);
}

// a's local position is strictly below b's
FormulaPtr posLess(unsigned n, const char* a, const char* b) {
  std::vector<FormulaPtr> ds;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<FormulaPtr> cs{fNot(bit(i, a)), bit(i, b)};
    for (unsigned j = i + 1; j < n; ++j)
      cs.push_back(iff(bit(j, a), bit(j, b)));
    ds.push_back(fConj(cs));
  }
  return fDisj(ds);
}

// b's local position is a's plus one, mod 2^n
FormulaPtr posSucc(unsigned n, const char* a, const char* b) {
  std::vector<FormulaPtr> ds;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<FormulaPtr> cs;
    for (unsigned j = 0; j < i; ++j) {
      cs.push_back(bit(j, a));
      cs.push_back(fNot(bit(j, b)));
    }
    cs.push_back(fNot(bit(i, a)));
    cs.push_back(bit(i, b));
    for (unsigned j = i + 1; j < n; ++j)
      cs.push_back(iff(bit(j, a), bit(j, b)));
    ds.push_back(fConj(cs));
  }
  std::vector<FormulaPtr> wrap;
  for (unsigned i = 0; i < n; ++i) wrap.push_back(bit(i, a));
  for (unsigned i = 0; i < n; ++i) wrap.push_back(fNot(bit(i, b)));
  ds.push_back(fConj(wrap));
  return fDisj(ds);
}

// v is the carry position of its counter: its own flag is unset and every
// sibling at a lower position has its flag set
FormulaPtr carryPos(unsigned n, const char* v) {
  return fAnd(fNot(fAtom("Q", v)),
              fForall({"p", "s"},
                      imp(fConj({child("p", v), child("p", "s"),
                                 fAtom("P", "s"), posLess(n, "s", v)}),
                          fAtom("Q", "s"))));
}

}  // namespace

Signature deepPathSignature(unsigned n) {
  if (n == 0) throw std::runtime_error("counter width must be positive");
  Signature s;
  s.unary = {"N", "P", "Q"};
  for (unsigned i = 0; i < n; ++i) s.unary.push_back("P" + std::to_string(i));
  s.nav = {Rel::succv};
  return s;
}

FormulaPtr deepPathFormula(unsigned n) {
  if (n == 0) throw std::runtime_error("counter width must be positive");
  auto N = [](const char* v) { return fAtom("N", v); };
  auto P = [](const char* v) { return fAtom("P", v); };
  auto Q = [](const char* v) { return fAtom("Q", v); };
  std::vector<FormulaPtr> cs;
  // some chain node carries the all-zero counter
  cs.push_back(fExists(
      {"x"}, fAnd(N("x"), fForall({"y"}, imp(fAnd(child("x", "y"), P("y")),
                                             fNot(Q("y")))))));
  // every node is a chain node or a counter digit, never both
  cs.push_back(fForall({"x"}, fAnd(fOr(N("x"), P("x")),
                                   fNot(fAnd(N("x"), P("x"))))));
  // chain nodes carry at least one digit
  cs.push_back(fForall(
      {"x"}, imp(N("x"), fExists({"y"}, fAnd(child("x", "y"), P("y"))))));
  // digit positions close under cyclic successor among siblings
  cs.push_back(fForall(
      {"x"}, imp(P("x"), fExists({"y", "z"},
                                 fConj({child("z", "x"), child("z", "y"),
                                        P("y"), posSucc(n, "x", "y")})))));
  // sibling digits at the same position agree on their flag
  cs.push_back(fForall(
      {"x", "y", "z"},
      imp(fConj({child("z", "x"), child("z", "y"), P("x"), P("y"),
                 posEq(n, "x", "y")}),
          iff(Q("x"), Q("y")))));
  // a chain node whose counter is not all-ones continues the chain
  cs.push_back(fForall(
      {"x"}, imp(fAnd(N("x"), fExists({"y"}, fConj({child("x", "y"), P("y"),
                                                    fNot(Q("y"))}))),
                 fExists({"y"}, fAnd(child("x", "y"), N("y"))))));
  // increment: the carry digit flips to set in the next chain node
  cs.push_back(fForall(
      {"x", "z", "t", "y"},
      imp(fConj({P("x"), carryPos(n, "x"), child("z", "x"), N("z"),
                 child("z", "t"), N("t"), child("t", "y"), P("y"),
                 posEq(n, "x", "y")}),
          Q("y"))));
  // increment: digits below the carry reset
  cs.push_back(fForall(
      {"z", "t", "x", "xp", "yp"},
      imp(fConj({N("z"), N("t"), child("z", "t"), child("z", "x"),
                 child("z", "xp"), child("t", "yp"), P("x"), P("xp"),
                 P("yp"), carryPos(n, "x"), posLess(n, "xp", "x"),
                 posEq(n, "xp", "yp")}),
          fNot(Q("yp")))));
  // increment: digits above the carry are preserved
  cs.push_back(fForall(
      {"z", "t", "x", "xp", "yp"},
      imp(fConj({N("z"), N("t"), child("z", "t"), child("z", "x"),
                 child("z", "xp"), child("t", "yp"), P("x"), P("xp"),
                 P("yp"), carryPos(n, "x"), posLess(n, "x", "xp"),
                 posEq(n, "xp", "yp")}),
          iff(Q("yp"), Q("xp")))));
  return fConj(cs);
}

TreeModel buildDeepPathModel(unsigned n) {
  if (n == 0) throw std::runtime_error("counter width must be positive");
  if (n > 3) throw std::runtime_error("counter width too large to build");
  size_t digits = size_t(1) << n;
  size_t length = size_t(1) << digits;
  TreeModel t;
  NodeAddr chain;  // address of the current chain node
  for (size_t g = 0; g < length; ++g) {
    t.nodes.push_back(chain);
    t.labels.push_back({"N"});
    for (size_t l = 0; l < digits; ++l) {
      NodeAddr a = chain;
      a.push_back((int)l);
      t.nodes.push_back(a);
      LabelSet ls{"P"};
      if ((g >> l) & 1) ls.insert("Q");
      for (unsigned i = 0; i < n; ++i)
        if ((l >> i) & 1) ls.insert("P" + std::to_string(i));
      t.labels.push_back(std::move(ls));
    }
    chain.push_back((int)digits);
  }
  return t;
}

}  // namespace odfkit
