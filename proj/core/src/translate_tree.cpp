#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "odfkit/syntax.hpp"
#include "odfkit/translate.hpp"
#include "translate_util.hpp"

namespace odfkit {

namespace {

void requireRels(const FormulaPtr& f) {
  if (f->kind == FKind::NavAtom && f->rel != Rel::succv &&
      f->rel != Rel::lessv)
    throw std::runtime_error(
        "translation is restricted to the child/descendant relations");
  for (auto& k : f->kids) requireRels(k);
}

// ----- guarded two-variable logic to UNFO -----
//
// Universal blocks become negated existentials; inside a guarded block the
// guard pins the vertical configuration of the two names, so every binary
// literal over them collapses to a constant; descendant guards split into the
// child case and the child-then-descendant case first.

struct Gf2Rewriter {
  unsigned counter = 0;

  // canonical key for a binary atom over two fixed names
  static std::string key(Rel r, const std::string& a, const std::string& b) {
    return std::string(relName(r)) + ":" + a + ":" + b;
  }
  static std::string ekey(const std::string& a, const std::string& b) {
    return a < b ? "e:" + a + ":" + b : "e:" + b + ":" + a;
  }

  using Known = std::map<std::string, bool>;

  static Known knownFor(Rel r, const std::string& a, const std::string& b,
                        bool child) {
    Known k;
    k[key(Rel::succv, a, b)] = child;
    k[key(Rel::lessv, a, b)] = true;
    k[key(Rel::succv, b, a)] = false;
    k[key(Rel::lessv, b, a)] = false;
    k[ekey(a, b)] = false;
    (void)r;
    return k;
  }

  FormulaPtr body(const FormulaPtr& f, const Known& kn, bool neg) {
    switch (f->kind) {
      case FKind::True:
        return neg ? fFalse() : fTrue();
      case FKind::False:
        return neg ? fTrue() : fFalse();
      case FKind::UnaryAtom:
        return neg ? fNot(f) : f;
      case FKind::NavAtom: {
        bool v;
        if (f->v1 == f->v2)
          v = false;  // child/descendant are irreflexive
        else {
          auto it = kn.find(key(f->rel, f->v1, f->v2));
          if (it == kn.end())
            throw std::runtime_error("binary atom outside the guarded pair");
          v = it->second;
        }
        if (neg) v = !v;
        // Positive unknown atoms would stay, but the guard pins every pair.
        return v ? fTrue() : fFalse();
      }
      case FKind::Eq: {
        bool v;
        if (f->v1 == f->v2)
          v = true;
        else {
          auto it = kn.find(ekey(f->v1, f->v2));
          if (it == kn.end())
            throw std::runtime_error("equality outside the guarded pair");
          v = it->second;
        }
        if (neg) v = !v;
        return v ? fTrue() : fFalse();
      }
      case FKind::Not:
        return body(f->kids[0], kn, !neg);
      case FKind::And: {
        FormulaPtr a = body(f->kids[0], kn, neg), b = body(f->kids[1], kn, neg);
        return neg ? fOr(a, b) : fAnd(a, b);
      }
      case FKind::Or: {
        FormulaPtr a = body(f->kids[0], kn, neg), b = body(f->kids[1], kn, neg);
        return neg ? fAnd(a, b) : fOr(a, b);
      }
      case FKind::Exists: {
        FormulaPtr g = block(f);
        return neg ? fNot(g) : g;
      }
      case FKind::Forall: {
        FormulaPtr g = block(forallToExists(f));
        return neg ? g : fNot(g);
      }
      default:
        throw std::runtime_error("counting quantifiers are outside the fragment");
    }
  }

  static FormulaPtr forallToExists(const FormulaPtr& f) {
    // forall y (not guard or psi)  ->  exists y (guard and not psi)
    FormulaPtr b = f->kids[0];
    if (b->kind == FKind::Or && b->kids[0]->kind == FKind::Not)
      return fExists(f->vars, fAnd(b->kids[0]->kids[0], fNot(b->kids[1])));
    return fExists(f->vars, fNot(b));
  }

  FormulaPtr block(const FormulaPtr& ex) {
    FormulaPtr b = ex->kids[0];
    std::set<std::string> need = freeVars(b);
    if (need.size() <= 1) return fExists(ex->vars, body(b, {}, false));
    if (!(b->kind == FKind::And || b->kind == FKind::UnaryAtom ||
          b->kind == FKind::NavAtom || b->kind == FKind::Eq))
      throw std::runtime_error("block is not guarded");
    FormulaPtr guard = b->kind == FKind::And ? b->kids[0] : b;
    FormulaPtr rest = b->kind == FKind::And ? b->kids[1] : fTrue();
    if (guard->kind == FKind::Eq) {
      Known kn;
      kn[ekey(guard->v1, guard->v2)] = true;
      for (Rel r : {Rel::succv, Rel::lessv}) {
        kn[key(r, guard->v1, guard->v2)] = false;
        kn[key(r, guard->v2, guard->v1)] = false;
      }
      return fExists(ex->vars, fAnd(guard, body(rest, kn, false)));
    }
    if (guard->kind != FKind::NavAtom)
      throw std::runtime_error("block is not guarded");
    const std::string &a = guard->v1, &bb = guard->v2;
    if (guard->rel == Rel::succv) {
      return fExists(ex->vars,
                     fAnd(guard, body(rest, knownFor(Rel::succv, a, bb, true),
                                      false)));
    }
    if (guard->rel != Rel::lessv)
      throw std::runtime_error(
          "translation is restricted to the child/descendant relations");
    // descendant guard: child step, or child then proper descendant
    FormulaPtr childCase =
        fExists(ex->vars, fAnd(fNav(Rel::succv, a, bb),
                               body(rest, knownFor(Rel::succv, a, bb, true),
                                    false)));
    std::string z = "_g" + std::to_string(++counter);
    std::vector<std::string> vars = ex->vars;
    vars.push_back(z);
    FormulaPtr deepCase = fExists(
        vars, fConj({fNav(Rel::succv, a, z), fNav(Rel::lessv, z, bb),
                     body(rest, knownFor(Rel::lessv, a, bb, false), false)}));
    return fOr(childCase, deepCase);
  }
};

}  // namespace

FormulaPtr gf2ToUnfoUnordered(const FormulaPtr& f, const Signature& sig) {
  if (!classify(f, sig).count(FragmentTag::GF2))
    throw std::runtime_error("input is not guarded two-variable");
  requireRels(f);
  if (freeVars(f).size() > 1)
    throw std::runtime_error("expected a sentence or one free variable");
  Gf2Rewriter rw;
  return rw.body(f, {}, false);
}

// ----- tree ordering schemes -----

namespace {

// Restricted-growth enumeration of set partitions of 0..n-1.
void rgPartitions(size_t n, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(n, 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int maxc) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= maxc; ++c) {
      cur[i] = c;
      rec(i + 1, std::max(maxc, c + 1));
    }
  };
  if (n) rec(0, 0);
}

}  // namespace

std::vector<TreeOrderingScheme> enumerateTreeOrderingSchemes(unsigned k) {
  std::vector<TreeOrderingScheme> out;
  std::vector<std::vector<int>> parts;
  rgPartitions(k + 1, parts);
  for (auto& part : parts) {
    int m = *std::max_element(part.begin(), part.end()) + 1;
    std::vector<std::vector<int>> members(m);
    for (size_t i = 0; i < part.size(); ++i)
      members[part[i]].push_back((int)i);
    // every parent assignment (-1 or another class) that is acyclic
    std::vector<int> parent(m, -1);
    std::function<void(int)> assign = [&](int c) {
      if (c == m) {
        // acyclicity
        for (int s = 0; s < m; ++s) {
          int steps = 0, cur = s;
          while (cur >= 0 && steps <= m) {
            cur = parent[cur];
            ++steps;
          }
          if (steps > m) return;
        }
        std::vector<int> nonRoot;
        for (int s = 0; s < m; ++s)
          if (parent[s] >= 0) nonRoot.push_back(s);
        for (size_t mask = 0; mask < (size_t(1) << nonRoot.size()); ++mask) {
          TreeOrderingScheme sch;
          for (int s = 0; s < m; ++s)
            sch.classes.push_back({members[s], parent[s], false});
          for (size_t i = 0; i < nonRoot.size(); ++i)
            sch.classes[nonRoot[i]].childEdge = (mask >> i) & 1;
          out.push_back(std::move(sch));
        }
        return;
      }
      for (int p = -1; p < m; ++p) {
        if (p == c) continue;
        parent[c] = p;
        assign(c + 1);
      }
      parent[c] = -1;
    };
    assign(0);
  }
  return out;
}

namespace {

bool schemeAncestor(const TreeOrderingScheme& s, int a, int d) {
  int cur = s.classes[d].parent;
  while (cur >= 0) {
    if (cur == a) return true;
    cur = s.classes[cur].parent;
  }
  return false;
}

// Truth of a binary atom between two variable indices under a scheme.
bool schemeAtom(const TreeOrderingScheme& s, const std::vector<int>& classOf,
                Rel r, int vi, int vj) {
  int ci = classOf[vi], cj = classOf[vj];
  if (r == Rel::succv)
    return ci != cj && s.classes[cj].parent == ci && s.classes[cj].childEdge;
  return ci != cj && schemeAncestor(s, ci, cj);
}

}  // namespace

ModalPtr treeSchemeTraversal(const TreeOrderingScheme& scheme, int focusClass,
                             const std::vector<ModalPtr>& bundles) {
  size_t m = scheme.classes.size();
  std::vector<std::vector<int>> kids(m);
  for (size_t c = 0; c < m; ++c)
    if (scheme.classes[c].parent >= 0)
      kids[scheme.classes[c].parent].push_back((int)c);

  std::function<ModalPtr(int)> emitDown = [&](int c) -> ModalPtr {
    std::vector<ModalPtr> cs{bundles[c]};
    for (int u : kids[c])
      cs.push_back(mDiamond(
          scheme.classes[u].childEdge ? Dir::down : Dir::downPlus,
          emitDown(u)));
    return mConj(cs);
  };

  std::function<ModalPtr(int)> emitUp = [&](int c) -> ModalPtr {
    int p = scheme.classes[c].parent;
    std::vector<ModalPtr> cs{bundles[p]};
    for (int u : kids[p])
      if (u != c)
        cs.push_back(mDiamond(
            scheme.classes[u].childEdge ? Dir::down : Dir::downPlus,
            emitDown(u)));
    if (scheme.classes[p].parent >= 0) cs.push_back(emitUp(p));
    return mDiamond(scheme.classes[c].childEdge ? Dir::up : Dir::upPlus,
                    mConj(cs));
  };

  std::vector<ModalPtr> cs{bundles[focusClass]};
  for (int u : kids[focusClass])
    cs.push_back(mDiamond(
        scheme.classes[u].childEdge ? Dir::down : Dir::downPlus, emitDown(u)));
  if (scheme.classes[focusClass].parent >= 0) cs.push_back(emitUp(focusClass));
  // focus component top, to skip when jumping to the other components
  int top = focusClass;
  while (scheme.classes[top].parent >= 0) top = scheme.classes[top].parent;
  for (size_t c = 0; c < m; ++c)
    if ((int)c != top && scheme.classes[c].parent < 0)
      cs.push_back(
          mDiamond(Dir::upPlus, mDiamond(Dir::downPlus, emitDown((int)c))));
  return mConj(cs);
}

// ----- UNFO one-dimensional formulas to CoreXPath -----

namespace {

struct XPathBuilder {
  const Signature& sig;
  unsigned maxWidth;
  unsigned counter = 0;

  ModalPtr translate(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::True:
        return mTrue();
      case FKind::False:
        return mFalse();
      case FKind::UnaryAtom:
        return mProp(f->pred);
      case FKind::Eq:
        if (f->v1 == f->v2) return mTrue();
        throw std::runtime_error("two free variables in a modal context");
      case FKind::NavAtom:
        if (f->v1 == f->v2) return mFalse();
        throw std::runtime_error("two free variables in a modal context");
      case FKind::Not:
        return mNot(translate(f->kids[0]));
      case FKind::And:
        return mAnd(translate(f->kids[0]), translate(f->kids[1]));
      case FKind::Or:
        return mOr(translate(f->kids[0]), translate(f->kids[1]));
      case FKind::Exists:
        return block(f);
      case FKind::Forall:
        throw std::runtime_error("universal blocks are outside the fragment");
      default:
        throw std::runtime_error("counting quantifiers are outside the fragment");
    }
  }

  ModalPtr block(const FormulaPtr& ex) {
    if (ex->vars.size() > maxWidth)
      throw std::runtime_error("block width exceeds the cap");
    std::set<std::string> fv = freeVars(ex);
    std::string focusVar =
        fv.empty() ? "_x" + std::to_string(++counter) : *fv.begin();
    std::vector<std::string> vars{focusVar};
    vars.insert(vars.end(), ex->vars.begin(), ex->vars.end());
    std::map<std::string, int> vidx;
    for (size_t i = 0; i < vars.size(); ++i) vidx[vars[i]] = (int)i;

    FormulaPtr matrix = ex->kids[0];
    std::vector<FormulaPtr> atoms;
    translate_detail::collectAtoms(matrix, atoms);
    auto assignments = translate_detail::matrixAssignments(matrix, atoms);
    auto schemes = enumerateTreeOrderingSchemes((unsigned)ex->vars.size());

    std::vector<ModalPtr> relTrans(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i]->kind == FKind::Exists) relTrans[i] = translate(atoms[i]);

    std::vector<ModalPtr> result;
    for (auto& val : assignments) {
      for (auto& scheme : schemes) {
        std::vector<int> classOf(vars.size());
        for (size_t c = 0; c < scheme.classes.size(); ++c)
          for (int v : scheme.classes[c].members) classOf[v] = (int)c;
        bool ok = true;
        std::vector<std::vector<ModalPtr>> bundle(scheme.classes.size());
        for (size_t i = 0; i < atoms.size() && ok; ++i) {
          const FormulaPtr& a = atoms[i];
          bool v = val[i];
          switch (a->kind) {
            case FKind::NavAtom: {
              bool actual = schemeAtom(scheme, classOf, a->rel,
                                       vidx.at(a->v1), vidx.at(a->v2));
              if (actual != v) ok = false;
              break;
            }
            case FKind::Eq: {
              bool actual = classOf[vidx.at(a->v1)] == classOf[vidx.at(a->v2)];
              if (actual != v) ok = false;
              break;
            }
            case FKind::UnaryAtom: {
              ModalPtr lit = v ? mProp(a->pred) : mNot(mProp(a->pred));
              bundle[classOf[vidx.at(a->v1)]].push_back(lit);
              break;
            }
            case FKind::Forall:
              throw std::runtime_error(
                  "universal blocks are outside the fragment");
            default: {
              std::set<std::string> afv = freeVars(a);
              ModalPtr lit = v ? relTrans[i] : mNot(relTrans[i]);
              int c = afv.empty() ? classOf[0] : classOf[vidx.at(*afv.begin())];
              bundle[c].push_back(lit);
            }
          }
        }
        if (!ok) continue;
        std::vector<ModalPtr> bs;
        for (auto& b : bundle) bs.push_back(mConj(b));
        result.push_back(treeSchemeTraversal(scheme, classOf[0], bs));
      }
    }
    return mDisj(result);
  }
};

}  // namespace

ModalPtr unfoToCoreXPathUnordered(const FormulaPtr& f, const Signature& sig,
                                  unsigned maxWidth) {
  auto tags = classify(f, sig);
  if (!tags.count(FragmentTag::UNFO) || !tags.count(FragmentTag::ODF))
    throw std::runtime_error("input is not one-dimensional UNFO");
  requireRels(f);
  if (freeVars(f).size() >= 2)
    throw std::runtime_error("expected at most one free variable");
  XPathBuilder b{sig, maxWidth};
  return b.translate(f);
}

}  // namespace odfkit
