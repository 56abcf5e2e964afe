#include "odfkit/formula.hpp"

#include <algorithm>

namespace odfkit {

const char* relName(Rel r) {
  switch (r) {
    case Rel::succh: return "succh";
    case Rel::lessh: return "lessh";
    case Rel::succv: return "succv";
    case Rel::lessv: return "lessv";
    case Rel::sim: return "sim";
    case Rel::succh2: return "succh2";
  }
  return "?";
}

bool relFromName(const std::string& s, Rel& out) {
  static const std::pair<const char*, Rel> table[] = {
      {"succh", Rel::succh},  {"lessh", Rel::lessh}, {"succv", Rel::succv},
      {"lessv", Rel::lessv},  {"sim", Rel::sim},     {"succh2", Rel::succh2},
  };
  for (auto& [n, r] : table)
    if (s == n) {
      out = r;
      return true;
    }
  return false;
}

bool Signature::hasUnary(const std::string& p) const {
  return std::find(unary.begin(), unary.end(), p) != unary.end();
}

int Signature::unaryIndex(const std::string& p) const {
  auto it = std::find(unary.begin(), unary.end(), p);
  return it == unary.end() ? -1 : int(it - unary.begin());
}

Signature Signature::withUnary(const std::vector<std::string>& extra) const {
  Signature s = *this;
  for (auto& p : extra)
    if (!s.hasUnary(p)) s.unary.push_back(p);
  return s;
}

static FormulaPtr mk(Formula f) { return std::make_shared<Formula>(std::move(f)); }

FormulaPtr fTrue() {
  static FormulaPtr t = mk({.kind = FKind::True});
  return t;
}
FormulaPtr fFalse() {
  static FormulaPtr f = mk({.kind = FKind::False});
  return f;
}
FormulaPtr fAtom(const std::string& pred, const std::string& v) {
  Formula f;
  f.kind = FKind::UnaryAtom;
  f.pred = pred;
  f.v1 = v;
  return mk(std::move(f));
}
FormulaPtr fNav(Rel r, const std::string& a, const std::string& b) {
  Formula f;
  f.kind = FKind::NavAtom;
  f.rel = r;
  f.v1 = a;
  f.v2 = b;
  return mk(std::move(f));
}
FormulaPtr fEq(const std::string& a, const std::string& b) {
  Formula f;
  f.kind = FKind::Eq;
  f.v1 = a;
  f.v2 = b;
  return mk(std::move(f));
}
FormulaPtr fNot(FormulaPtr x) {
  Formula f;
  f.kind = FKind::Not;
  f.kids = {std::move(x)};
  return mk(std::move(f));
}
FormulaPtr fAnd(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FKind::And;
  f.kids = {std::move(a), std::move(b)};
  return mk(std::move(f));
}
FormulaPtr fOr(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FKind::Or;
  f.kids = {std::move(a), std::move(b)};
  return mk(std::move(f));
}
FormulaPtr fExists(std::vector<std::string> vars, FormulaPtr body) {
  Formula f;
  f.kind = FKind::Exists;
  f.vars = std::move(vars);
  f.kids = {std::move(body)};
  return mk(std::move(f));
}
FormulaPtr fForall(std::vector<std::string> vars, FormulaPtr body) {
  Formula f;
  f.kind = FKind::Forall;
  f.vars = std::move(vars);
  f.kids = {std::move(body)};
  return mk(std::move(f));
}
FormulaPtr fCountGe(unsigned n, const std::string& v, FormulaPtr body) {
  Formula f;
  f.kind = FKind::CountGe;
  f.threshold = n;
  f.v1 = v;
  f.kids = {std::move(body)};
  return mk(std::move(f));
}
FormulaPtr fCountLe(unsigned n, const std::string& v, FormulaPtr body) {
  Formula f;
  f.kind = FKind::CountLe;
  f.threshold = n;
  f.v1 = v;
  f.kids = {std::move(body)};
  return mk(std::move(f));
}

// Balanced folds keep the tree depth logarithmic so that recursive
// traversals survive conjunctions with very many members.
template <class P, class F>
static P balancedFold(const std::vector<P>& fs, size_t lo, size_t hi, F&& op) {
  if (hi - lo == 1) return fs[lo];
  size_t mid = lo + (hi - lo) / 2;
  return op(balancedFold(fs, lo, mid, op), balancedFold(fs, mid, hi, op));
}

FormulaPtr fConj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return fTrue();
  return balancedFold(fs, 0, fs.size(),
                      [](FormulaPtr a, FormulaPtr b) { return fAnd(a, b); });
}
FormulaPtr fDisj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return fFalse();
  return balancedFold(fs, 0, fs.size(),
                      [](FormulaPtr a, FormulaPtr b) { return fOr(a, b); });
}

static void collect(FKind k, const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == k) {
    collect(k, f->kids[0], out);
    collect(k, f->kids[1], out);
  } else {
    out.push_back(f);
  }
}
std::vector<FormulaPtr> conjuncts(FormulaPtr f) {
  std::vector<FormulaPtr> out;
  collect(FKind::And, f, out);
  return out;
}
std::vector<FormulaPtr> disjuncts(FormulaPtr f) {
  std::vector<FormulaPtr> out;
  collect(FKind::Or, f, out);
  return out;
}

static void freeVarsInto(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return;
    case FKind::UnaryAtom:
      out.insert(f->v1);
      return;
    case FKind::NavAtom:
    case FKind::Eq:
      out.insert(f->v1);
      out.insert(f->v2);
      return;
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
      for (auto& k : f->kids) freeVarsInto(k, out);
      return;
    case FKind::Exists:
    case FKind::Forall: {
      std::set<std::string> inner;
      freeVarsInto(f->kids[0], inner);
      for (auto& v : f->vars) inner.erase(v);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case FKind::CountGe:
    case FKind::CountLe: {
      std::set<std::string> inner;
      freeVarsInto(f->kids[0], inner);
      inner.erase(f->v1);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

std::set<std::string> freeVars(const FormulaPtr& f) {
  std::set<std::string> out;
  freeVarsInto(f, out);
  return out;
}

unsigned width(const FormulaPtr& f) {
  unsigned w = (unsigned)freeVars(f).size();
  for (auto& k : f->kids) w = std::max(w, width(k));
  return w;
}

bool astEqual(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->pred != b->pred || a->v1 != b->v1 ||
      a->v2 != b->v2 || a->vars != b->vars || a->threshold != b->threshold ||
      a->kids.size() != b->kids.size())
    return false;
  if ((a->kind == FKind::NavAtom) && a->rel != b->rel) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!astEqual(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {
// Map-based alpha equivalence: each side maps bound names to shared indices.
bool alphaEq(const FormulaPtr& a, const FormulaPtr& b,
             std::vector<std::pair<std::string, std::string>>& env) {
  auto lookup = [&](const std::string& x, const std::string& y) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == x || it->second == y)
        return it->first == x && it->second == y;
    }
    return x == y;  // both free
  };
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::True:
    case FKind::False:
      return true;
    case FKind::UnaryAtom:
      return a->pred == b->pred && lookup(a->v1, b->v1);
    case FKind::NavAtom:
      return a->rel == b->rel && lookup(a->v1, b->v1) && lookup(a->v2, b->v2);
    case FKind::Eq:
      return lookup(a->v1, b->v1) && lookup(a->v2, b->v2);
    case FKind::Not:
      return alphaEq(a->kids[0], b->kids[0], env);
    case FKind::And:
    case FKind::Or:
      return alphaEq(a->kids[0], b->kids[0], env) &&
             alphaEq(a->kids[1], b->kids[1], env);
    case FKind::Exists:
    case FKind::Forall: {
      if (a->vars.size() != b->vars.size()) return false;
      size_t base = env.size();
      for (size_t i = 0; i < a->vars.size(); ++i)
        env.emplace_back(a->vars[i], b->vars[i]);
      bool ok = alphaEq(a->kids[0], b->kids[0], env);
      env.resize(base);
      return ok;
    }
    case FKind::CountGe:
    case FKind::CountLe: {
      if (a->threshold != b->threshold) return false;
      env.emplace_back(a->v1, b->v1);
      bool ok = alphaEq(a->kids[0], b->kids[0], env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}
}  // namespace

bool alphaEqual(const FormulaPtr& a, const FormulaPtr& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return alphaEq(a, b, env);
}

FormulaPtr renameFree(const FormulaPtr& f, const std::string& from,
                      const std::string& to) {
  if (from == to) return f;
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::UnaryAtom:
      return f->v1 == from ? fAtom(f->pred, to) : f;
    case FKind::NavAtom: {
      std::string a = f->v1 == from ? to : f->v1;
      std::string b = f->v2 == from ? to : f->v2;
      return (a == f->v1 && b == f->v2) ? f : fNav(f->rel, a, b);
    }
    case FKind::Eq: {
      std::string a = f->v1 == from ? to : f->v1;
      std::string b = f->v2 == from ? to : f->v2;
      return (a == f->v1 && b == f->v2) ? f : fEq(a, b);
    }
    case FKind::Not:
      return fNot(renameFree(f->kids[0], from, to));
    case FKind::And:
      return fAnd(renameFree(f->kids[0], from, to),
                  renameFree(f->kids[1], from, to));
    case FKind::Or:
      return fOr(renameFree(f->kids[0], from, to),
                 renameFree(f->kids[1], from, to));
    case FKind::Exists:
    case FKind::Forall: {
      for (auto& v : f->vars)
        if (v == from) return f;  // shadowed; from not free below
      FormulaPtr body = renameFree(f->kids[0], from, to);
      return f->kind == FKind::Exists ? fExists(f->vars, body)
                                      : fForall(f->vars, body);
    }
    case FKind::CountGe:
    case FKind::CountLe: {
      if (f->v1 == from) return f;
      FormulaPtr body = renameFree(f->kids[0], from, to);
      return f->kind == FKind::CountGe ? fCountGe(f->threshold, f->v1, body)
                                       : fCountLe(f->threshold, f->v1, body);
    }
  }
  return f;
}

namespace {
FormulaPtr freshen(const FormulaPtr& f, unsigned& counter,
                   std::set<std::string>& taken,
                   std::vector<std::pair<std::string, std::string>>& env) {
  auto look = [&](const std::string& v) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  };
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::UnaryAtom:
      return fAtom(f->pred, look(f->v1));
    case FKind::NavAtom:
      return fNav(f->rel, look(f->v1), look(f->v2));
    case FKind::Eq:
      return fEq(look(f->v1), look(f->v2));
    case FKind::Not:
      return fNot(freshen(f->kids[0], counter, taken, env));
    case FKind::And:
      return fAnd(freshen(f->kids[0], counter, taken, env),
                  freshen(f->kids[1], counter, taken, env));
    case FKind::Or:
      return fOr(freshen(f->kids[0], counter, taken, env),
                 freshen(f->kids[1], counter, taken, env));
    case FKind::Exists:
    case FKind::Forall: {
      size_t base = env.size();
      std::vector<std::string> fresh;
      for (auto& v : f->vars) {
        std::string nv = v;
        while (taken.count(nv)) nv = v + "_" + std::to_string(++counter);
        taken.insert(nv);
        fresh.push_back(nv);
        env.emplace_back(v, nv);
      }
      FormulaPtr body = freshen(f->kids[0], counter, taken, env);
      env.resize(base);
      return f->kind == FKind::Exists ? fExists(fresh, body)
                                      : fForall(fresh, body);
    }
    case FKind::CountGe:
    case FKind::CountLe: {
      std::string nv = f->v1;
      while (taken.count(nv)) nv = f->v1 + "_" + std::to_string(++counter);
      taken.insert(nv);
      env.emplace_back(f->v1, nv);
      FormulaPtr body = freshen(f->kids[0], counter, taken, env);
      env.pop_back();
      return f->kind == FKind::CountGe ? fCountGe(f->threshold, nv, body)
                                       : fCountLe(f->threshold, nv, body);
    }
  }
  return f;
}
}  // namespace

FormulaPtr freshenBound(const FormulaPtr& f, unsigned& counter,
                        std::set<std::string>& taken) {
  for (auto& v : freeVars(f)) taken.insert(v);
  std::vector<std::pair<std::string, std::string>> env;
  return freshen(f, counter, taken, env);
}

namespace {
FormulaPtr nnf(const FormulaPtr& f, bool neg) {
  switch (f->kind) {
    case FKind::True:
      return neg ? fFalse() : fTrue();
    case FKind::False:
      return neg ? fTrue() : fFalse();
    case FKind::UnaryAtom:
    case FKind::NavAtom:
    case FKind::Eq:
      return neg ? fNot(f) : f;
    case FKind::Not:
      return nnf(f->kids[0], !neg);
    case FKind::And: {
      FormulaPtr a = nnf(f->kids[0], neg), b = nnf(f->kids[1], neg);
      return neg ? fOr(a, b) : fAnd(a, b);
    }
    case FKind::Or: {
      FormulaPtr a = nnf(f->kids[0], neg), b = nnf(f->kids[1], neg);
      return neg ? fAnd(a, b) : fOr(a, b);
    }
    case FKind::Exists: {
      FormulaPtr body = nnf(f->kids[0], neg);
      return neg ? fForall(f->vars, body) : fExists(f->vars, body);
    }
    case FKind::Forall: {
      FormulaPtr body = nnf(f->kids[0], neg);
      return neg ? fExists(f->vars, body) : fForall(f->vars, body);
    }
    case FKind::CountGe: {
      if (!neg) return fCountGe(f->threshold, f->v1, nnf(f->kids[0], false));
      if (f->threshold == 0) return fFalse();  // not(E>=0) is false
      return fCountLe(f->threshold - 1, f->v1, nnf(f->kids[0], false));
    }
    case FKind::CountLe: {
      if (!neg) return fCountLe(f->threshold, f->v1, nnf(f->kids[0], false));
      return fCountGe(f->threshold + 1, f->v1, nnf(f->kids[0], false));
    }
  }
  return f;
}
}  // namespace

FormulaPtr pushNegationsInward(const FormulaPtr& f) { return nnf(f, false); }

bool quantifierFree(const FormulaPtr& f) {
  if (f->kind == FKind::Exists || f->kind == FKind::Forall ||
      f->kind == FKind::CountGe || f->kind == FKind::CountLe)
    return false;
  for (auto& k : f->kids)
    if (!quantifierFree(k)) return false;
  return true;
}

size_t formulaSize(const FormulaPtr& f) {
  size_t n = 1;
  for (auto& k : f->kids) n += formulaSize(k);
  return n;
}

const char* dirName(Dir d) {
  switch (d) {
    case Dir::down: return "down";
    case Dir::up: return "up";
    case Dir::downPlus: return "down+";
    case Dir::upPlus: return "up+";
    case Dir::right: return "right";
    case Dir::left: return "left";
    case Dir::rightPlus: return "right+";
    case Dir::leftPlus: return "left+";
  }
  return "?";
}

static ModalPtr mmk(ModalFormula f) {
  return std::make_shared<ModalFormula>(std::move(f));
}

ModalPtr mProp(const std::string& p) {
  ModalFormula f;
  f.kind = MKind::Prop;
  f.prop = p;
  return mmk(std::move(f));
}
ModalPtr mTrue() {
  static ModalPtr t = mmk({.kind = MKind::True});
  return t;
}
ModalPtr mFalse() {
  static ModalPtr f = mmk({.kind = MKind::False});
  return f;
}
ModalPtr mNot(ModalPtr x) {
  ModalFormula f;
  f.kind = MKind::Not;
  f.kids = {std::move(x)};
  return mmk(std::move(f));
}
ModalPtr mAnd(ModalPtr a, ModalPtr b) {
  ModalFormula f;
  f.kind = MKind::And;
  f.kids = {std::move(a), std::move(b)};
  return mmk(std::move(f));
}
ModalPtr mOr(ModalPtr a, ModalPtr b) {
  ModalFormula f;
  f.kind = MKind::Or;
  f.kids = {std::move(a), std::move(b)};
  return mmk(std::move(f));
}
ModalPtr mDiamond(Dir d, ModalPtr x) {
  ModalFormula f;
  f.kind = MKind::Diamond;
  f.dir = d;
  f.kids = {std::move(x)};
  return mmk(std::move(f));
}
ModalPtr mBox(Dir d, ModalPtr x) {
  ModalFormula f;
  f.kind = MKind::Box;
  f.dir = d;
  f.kids = {std::move(x)};
  return mmk(std::move(f));
}
ModalPtr mConj(const std::vector<ModalPtr>& fs) {
  if (fs.empty()) return mTrue();
  return balancedFold(fs, 0, fs.size(),
                      [](ModalPtr a, ModalPtr b) { return mAnd(a, b); });
}
ModalPtr mDisj(const std::vector<ModalPtr>& fs) {
  if (fs.empty()) return mFalse();
  return balancedFold(fs, 0, fs.size(),
                      [](ModalPtr a, ModalPtr b) { return mOr(a, b); });
}

bool modalEqual(const ModalPtr& a, const ModalPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->prop != b->prop ||
      a->kids.size() != b->kids.size())
    return false;
  if ((a->kind == MKind::Diamond || a->kind == MKind::Box) && a->dir != b->dir)
    return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!modalEqual(a->kids[i], b->kids[i])) return false;
  return true;
}

size_t modalSize(const ModalPtr& f) {
  size_t n = 1;
  for (auto& k : f->kids) n += modalSize(k);
  return n;
}

}  // namespace odfkit
