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

void checkRelsAllowed(const FormulaPtr& f, const std::set<Rel>& allowed) {
  if (f->kind == FKind::NavAtom && !allowed.count(f->rel))
    throw std::runtime_error("relation outside the target structure class");
  for (auto& k : f->kids) checkRelsAllowed(k, allowed);
}

// ----- negation elimination on binary atoms (word and ordered-tree cases) --
//
// Negations are pushed inward; universal blocks become negated existential
// blocks (legal: the block leaves at most one variable free); a negated
// binary atom is replaced by a positive description of its complement, the
// only construction that needs extra quantifiers.

struct UnfoRewriter {
  bool tree;
  unsigned counter = 0;

  std::string fresh() { return "_u" + std::to_string(++counter); }

  // y is a weak ancestor of some sibling of a weak ancestor of x; with the
  // two leading disjuncts this captures "y is not a strict descendant of x".
  FormulaPtr sideBranch(const std::string& x, const std::string& y) {
    std::string z = fresh(), t = fresh();
    FormulaPtr sib = fOr(fNav(Rel::lessh, z, t), fNav(Rel::lessh, t, z));
    FormulaPtr tPart =
        fExists({t}, fAnd(sib, fOr(fEq(y, t), fNav(Rel::lessv, t, y))));
    return fExists({z}, fAnd(fOr(fEq(z, x), fNav(Rel::lessv, z, x)),
                             fOr(fEq(y, z), tPart)));
  }

  FormulaPtr negNav(Rel r, const std::string& x, const std::string& y) {
    if (!tree) {
      if (r == Rel::lessh) return fOr(fNav(Rel::lessh, y, x), fEq(x, y));
      if (r == Rel::succh) {
        std::string z = fresh();
        return fDisj({fNav(Rel::lessh, y, x), fEq(x, y),
                      fExists({z}, fAnd(fNav(Rel::succh, x, z),
                                        fNav(Rel::lessh, z, y)))});
      }
      throw std::runtime_error("relation outside the word signature");
    }
    switch (r) {
      case Rel::lessv:
        return sideBranch(x, y);
      case Rel::succv: {
        std::string z = fresh();
        return fOr(sideBranch(x, y),
                   fExists({z}, fAnd(fNav(Rel::succv, x, z),
                                     fNav(Rel::lessv, z, y))));
      }
      case Rel::lessh: {
        std::string z1 = fresh(), z2 = fresh(), z3 = fresh();
        return fDisj(
            {fEq(x, y), fNav(Rel::lessv, x, y),
             fExists({z1}, fAnd(fNav(Rel::lessh, z1, x),
                                fOr(fEq(y, z1), fNav(Rel::lessv, z1, y)))),
             fExists({z2}, fAnd(fNav(Rel::lessh, x, z2),
                                fNav(Rel::lessv, z2, y))),
             fExists({z3}, fAnd(fNav(Rel::lessv, z3, x),
                                fOr(fEq(y, z3), sideBranch(z3, y))))});
      }
      case Rel::succh: {
        std::string z = fresh();
        return fOr(negNav(Rel::lessh, x, y),
                   fExists({z}, fAnd(fNav(Rel::succh, x, z),
                                     fNav(Rel::lessh, z, y))));
      }
      default:
        throw std::runtime_error("relation outside the tree signature");
    }
  }

  FormulaPtr negEq(const std::string& x, const std::string& y) {
    if (!tree) return fOr(fNav(Rel::lessh, x, y), fNav(Rel::lessh, y, x));
    return fDisj({fNav(Rel::lessv, x, y), fNav(Rel::lessv, y, x),
                  strictSideBranch(x, y)});
  }

  // As sideBranch but without the y=z escape, so x and y must differ.
  FormulaPtr strictSideBranch(const std::string& x, const std::string& y) {
    std::string z = fresh(), t = fresh();
    FormulaPtr sib = fOr(fNav(Rel::lessh, z, t), fNav(Rel::lessh, t, z));
    FormulaPtr tPart =
        fExists({t}, fAnd(sib, fOr(fEq(y, t), fNav(Rel::lessv, t, y))));
    return fExists({z}, fAnd(fOr(fEq(z, x), fNav(Rel::lessv, z, x)), tPart));
  }

  FormulaPtr rewrite(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
      case FKind::True:
        return neg ? fFalse() : f;
      case FKind::False:
        return neg ? fTrue() : f;
      case FKind::UnaryAtom:
        return neg ? fNot(f) : f;
      case FKind::NavAtom:
        return neg ? negNav(f->rel, f->v1, f->v2) : f;
      case FKind::Eq:
        return neg ? negEq(f->v1, f->v2) : f;
      case FKind::Not:
        return rewrite(f->kids[0], !neg);
      case FKind::And: {
        FormulaPtr a = rewrite(f->kids[0], neg), b = rewrite(f->kids[1], neg);
        return neg ? fOr(a, b) : fAnd(a, b);
      }
      case FKind::Or: {
        FormulaPtr a = rewrite(f->kids[0], neg), b = rewrite(f->kids[1], neg);
        return neg ? fAnd(a, b) : fOr(a, b);
      }
      case FKind::Exists: {
        if (neg) return fNot(fExists(f->vars, rewrite(f->kids[0], false)));
        return fExists(f->vars, rewrite(f->kids[0], false));
      }
      case FKind::Forall: {
        if (neg) return fExists(f->vars, rewrite(f->kids[0], true));
        return fNot(fExists(f->vars, rewrite(f->kids[0], true)));
      }
      default:
        throw std::runtime_error("counting quantifiers are outside the fragment");
    }
  }
};

FormulaPtr toUnfo(const FormulaPtr& f, const Signature& sig, bool tree) {
  if (!classify(f, sig).count(FragmentTag::ODF))
    throw std::runtime_error("input is not one-dimensional");
  checkRelsAllowed(f, tree ? std::set<Rel>{Rel::succv, Rel::lessv, Rel::succh,
                                           Rel::lessh}
                           : std::set<Rel>{Rel::succh, Rel::lessh});
  UnfoRewriter rw{tree};
  return rw.rewrite(f, false);
}

}  // namespace

FormulaPtr odfToUnfoWord(const FormulaPtr& f, const Signature& sig) {
  return toUnfo(f, sig, /*tree=*/false);
}

FormulaPtr odfToUnfoXmlTree(const FormulaPtr& f, const Signature& sig) {
  return toUnfo(f, sig, /*tree=*/true);
}

// ----- ODF over words to two-variable logic -----

std::vector<OrderingScheme> enumerateOrderingSchemes(unsigned k) {
  std::vector<OrderingScheme> out;
  std::vector<int> perm(k + 1);
  for (unsigned i = 0; i <= k; ++i) perm[i] = (int)i;
  do {
    std::vector<OrderStep> steps(k, OrderStep::equal);
    bool more = true;
    while (more) {
      // Inside an equality run indices must increase (dedup of schemes that
      // only rename equated variables).
      bool canon = true;
      for (unsigned j = 0; j < k; ++j)
        if (steps[j] == OrderStep::equal && perm[j] > perm[j + 1])
          canon = false;
      if (canon) out.push_back({perm, steps});
      more = false;
      for (unsigned j = 0; j < k; ++j) {
        if (steps[j] == OrderStep::equal) {
          steps[j] = OrderStep::successor;
          more = true;
          break;
        }
        if (steps[j] == OrderStep::successor) {
          steps[j] = OrderStep::afterGap;
          more = true;
          break;
        }
        steps[j] = OrderStep::equal;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

struct SchemeView {
  std::vector<int> elemOf;        // variable index -> chain element
  std::vector<OrderStep> between; // element e to e+1 (never equal)
  size_t elements = 0;
};

SchemeView viewScheme(const OrderingScheme& s) {
  SchemeView v;
  v.elemOf.assign(s.order.size(), 0);
  size_t e = 0;
  v.elemOf[s.order[0]] = 0;
  for (size_t j = 0; j < s.steps.size(); ++j) {
    if (s.steps[j] != OrderStep::equal) {
      v.between.push_back(s.steps[j]);
      ++e;
    }
    v.elemOf[s.order[j + 1]] = (int)e;
  }
  v.elements = e + 1;
  return v;
}

struct Fo2Builder {
  const Signature& sig;
  unsigned maxWidth;
  unsigned counter = 0;

  std::string fresh() { return "_f" + std::to_string(++counter); }

  FormulaPtr translate(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::True:
      case FKind::False:
      case FKind::UnaryAtom:
      case FKind::Eq:
      case FKind::NavAtom:
        return f;
      case FKind::Not:
        return fNot(translate(f->kids[0]));
      case FKind::And:
        return fAnd(translate(f->kids[0]), translate(f->kids[1]));
      case FKind::Or:
        return fOr(translate(f->kids[0]), translate(f->kids[1]));
      case FKind::Exists:
        return block(f);
      case FKind::Forall:
        return fNot(block(fExists(f->vars, fNot(f->kids[0]))));
      default:
        throw std::runtime_error(
            "counting quantifiers are outside the fragment");
    }
  }

  FormulaPtr stepFormula(OrderStep st, const std::string& a,
                         const std::string& b) {
    if (st == OrderStep::successor) return fNav(Rel::succh, a, b);
    return fAnd(fNav(Rel::lessh, a, b), fNot(fNav(Rel::succh, a, b)));
  }

  FormulaPtr block(const FormulaPtr& ex) {
    if (ex->vars.size() > maxWidth)
      throw std::runtime_error("block width exceeds the cap");
    std::set<std::string> fv = freeVars(ex);
    bool closed = fv.empty();
    std::string outer = closed ? fresh() : *fv.begin();
    std::vector<std::string> chainVars{outer};
    chainVars.insert(chainVars.end(), ex->vars.begin(), ex->vars.end());
    std::map<std::string, int> vidx;
    for (size_t i = 0; i < chainVars.size(); ++i) vidx[chainVars[i]] = (int)i;

    FormulaPtr matrix = ex->kids[0];
    std::vector<FormulaPtr> atoms;
    translate_detail::collectAtoms(matrix, atoms);
    auto assignments = translate_detail::matrixAssignments(matrix, atoms);
    auto schemes = enumerateOrderingSchemes((unsigned)ex->vars.size());

    // Translate the relative atoms once.
    std::vector<FormulaPtr> relTrans(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i]->kind == FKind::Exists || atoms[i]->kind == FKind::Forall)
        relTrans[i] = translate(atoms[i]);

    std::vector<FormulaPtr> result;
    for (auto& val : assignments) {
      for (auto& scheme : schemes) {
        SchemeView sv = viewScheme(scheme);
        auto relOf = [&](int a, int b) -> std::pair<bool, bool> {
          // returns (lessh, succh) from a to b
          int ea = sv.elemOf[a], eb = sv.elemOf[b];
          if (ea >= eb) return {false, false};
          bool succ = (eb == ea + 1) && sv.between[ea] == OrderStep::successor;
          return {true, succ};
        };
        bool ok = true;
        std::vector<std::vector<FormulaPtr>> bundles(sv.elements);
        for (size_t i = 0; i < atoms.size() && ok; ++i) {
          const FormulaPtr& a = atoms[i];
          bool v = val[i];
          switch (a->kind) {
            case FKind::NavAtom: {
              auto [le, su] = relOf(vidx.at(a->v1), vidx.at(a->v2));
              bool actual = a->rel == Rel::lessh ? le : su;
              if (actual != v) ok = false;
              break;
            }
            case FKind::Eq: {
              bool actual = sv.elemOf[vidx.at(a->v1)] ==
                            sv.elemOf[vidx.at(a->v2)];
              if (actual != v) ok = false;
              break;
            }
            case FKind::UnaryAtom: {
              FormulaPtr lit = v ? a : fNot(a);
              bundles[sv.elemOf[vidx.at(a->v1)]].push_back(lit);
              break;
            }
            default: {  // relative atom
              std::set<std::string> afv = freeVars(a);
              FormulaPtr t = relTrans[i];
              FormulaPtr lit = v ? t : fNot(t);
              int e = afv.empty() ? sv.elemOf[0] : sv.elemOf[vidx.at(*afv.begin())];
              bundles[e].push_back(lit);
            }
          }
        }
        if (!ok) continue;
        result.push_back(assemble(sv, bundles, chainVars, outer));
      }
    }
    FormulaPtr out = fDisj(result);
    return closed ? fExists({outer}, out) : out;
  }

  // Conjunction of the focus bundle with the leftward and rightward chains of
  // single-variable quantifiers walking the scheme away from the free
  // variable.
  FormulaPtr assemble(const SchemeView& sv,
                      const std::vector<std::vector<FormulaPtr>>& bundles,
                      const std::vector<std::string>& chainVars,
                      const std::string& outer) {
    int t = sv.elemOf[0];
    std::vector<std::string> names(sv.elements);
    for (size_t e = 0; e < sv.elements; ++e)
      names[e] = (int)e == t ? outer : fresh();
    auto bundleAt = [&](size_t e) {
      std::vector<FormulaPtr> cs;
      for (auto& lit : bundles[e]) {
        FormulaPtr g = lit;
        // rename the literal's variable to the chain element's name
        std::set<std::string> gv = freeVars(g);
        for (auto& v : gv) g = renameFree(g, v, names[e]);
        cs.push_back(g);
      }
      return fConj(cs);
    };
    std::function<FormulaPtr(int)> chainLeft = [&](int e) -> FormulaPtr {
      std::vector<FormulaPtr> cs{
          stepFormula(sv.between[e], names[e], names[e + 1]), bundleAt(e)};
      if (e > 0) cs.push_back(chainLeft(e - 1));
      return fExists({names[e]}, fConj(cs));
    };
    std::function<FormulaPtr(size_t)> chainRight = [&](size_t e) -> FormulaPtr {
      std::vector<FormulaPtr> cs{
          stepFormula(sv.between[e - 1], names[e - 1], names[e]), bundleAt(e)};
      if (e + 1 < sv.elements) cs.push_back(chainRight(e + 1));
      return fExists({names[e]}, fConj(cs));
    };
    std::vector<FormulaPtr> cs{bundleAt(t)};
    if (t > 0) cs.push_back(chainLeft(t - 1));
    if ((size_t)(t + 1) < sv.elements) cs.push_back(chainRight(t + 1));
    return fConj(cs);
  }
};

}  // namespace

FormulaPtr odfToFo2Word(const FormulaPtr& f, const Signature& sig,
                        unsigned maxWidth) {
  if (!classify(f, sig).count(FragmentTag::ODF))
    throw std::runtime_error("input is not one-dimensional");
  if (freeVars(f).size() > 1)
    throw std::runtime_error("expected a sentence or one free variable");
  checkRelsAllowed(f, {Rel::succh, Rel::lessh});
  Fo2Builder b{sig, maxWidth};
  return b.translate(f);
}

}  // namespace odfkit
