#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "odfkit/sat.hpp"
#include "odfkit/semantics.hpp"
#include "odfkit/syntax.hpp"
#include "tree_util.hpp"

namespace odfkit {

namespace {

void collectRels(const FormulaPtr& f, std::set<Rel>& out) {
  if (f->kind == FKind::NavAtom) out.insert(f->rel);
  for (const FormulaPtr& c : f->kids) collectRels(c, out);
}

void requireFragment(const FormulaPtr& f, const Signature& sig,
                     StructureClass cls) {
  if (!freeVars(f).empty())
    throw std::runtime_error("satisfiability requires a closed formula");
  if (classify(f, sig).count(FragmentTag::ODF) == 0)
    throw std::runtime_error("formula outside the one-dimensional fragment");
  std::set<Rel> rels;
  collectRels(f, rels);
  for (Rel r : rels)
    if (!relLegal(cls, r))
      throw std::runtime_error(std::string(relName(r)) +
                               " is not available in this structure class");
  for (Rel r : sig.nav)
    if (!relLegal(cls, r))
      throw std::runtime_error(std::string(relName(r)) +
                               " is not available in this structure class");
}

std::vector<LabelSet> allLabelSets(const Signature& sig) {
  size_t n = sig.unary.size();
  std::vector<LabelSet> out;
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    LabelSet ls;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) ls.insert(sig.unary[i]);
    out.push_back(std::move(ls));
  }
  return out;
}

// ---- static refutation of a normal form ----

void collectBinaryAtoms(const FormulaPtr& f, std::set<std::string>& keys) {
  if (f->kind == FKind::NavAtom && f->v1 != f->v2)
    keys.insert(std::string(relName(f->rel)) + "(" + f->v1 + "," + f->v2 + ")");
  if (f->kind == FKind::Eq && f->v1 != f->v2) {
    std::string a = std::min(f->v1, f->v2), b = std::max(f->v1, f->v2);
    keys.insert("eq(" + a + "," + b + ")");
  }
  for (const FormulaPtr& c : f->kids) collectBinaryAtoms(c, keys);
}

// Evaluate a quantifier-free matrix with unary atoms fixed by per-variable
// 1-types and binary atoms read from a free assignment.
bool evalOptimistic(const FormulaPtr& f,
                    const std::map<std::string, const KType*>& oneTypes,
                    const std::map<std::string, bool>& bin) {
  switch (f->kind) {
    case FKind::True:
      return true;
    case FKind::False:
      return false;
    case FKind::UnaryAtom: {
      const KType* t = oneTypes.at(f->v1);
      for (size_t p = 0; p < t->unaryNames.size(); ++p)
        if (t->unaryNames[p] == f->pred) return t->unary(p, 0);
      return false;
    }
    case FKind::NavAtom: {
      if (f->v1 == f->v2) return false;
      return bin.at(std::string(relName(f->rel)) + "(" + f->v1 + "," + f->v2 +
                    ")");
    }
    case FKind::Eq: {
      if (f->v1 == f->v2) return true;
      std::string a = std::min(f->v1, f->v2), b = std::max(f->v1, f->v2);
      return bin.at("eq(" + a + "," + b + ")");
    }
    case FKind::Not:
      return !evalOptimistic(f->kids[0], oneTypes, bin);
    case FKind::And:
      return evalOptimistic(f->kids[0], oneTypes, bin) &&
             evalOptimistic(f->kids[1], oneTypes, bin);
    case FKind::Or:
      return evalOptimistic(f->kids[0], oneTypes, bin) ||
             evalOptimistic(f->kids[1], oneTypes, bin);
    default:
      throw std::runtime_error("matrix is not quantifier-free");
  }
}

// Sound unsatisfiability proof by 1-type analysis: collect the 1-types that
// survive every universal conjunct on all-equal tuples; the formula is
// refuted if none survives, or if some forall-exists conjunct has no witness
// even when every cross literal may be chosen freely.
bool staticallyRefuted(const NormalFormResult& nf) {
  std::vector<KType> consistent;
  size_t preds = nf.extendedSig.unary.size();
  if (preds > 20) return false;
  for (size_t mask = 0; mask < (size_t(1) << preds); ++mask) {
    KType mu = KType::blank(nf.extendedSig, 1);
    for (size_t p = 0; p < preds; ++p)
      if (mask & (size_t(1) << p)) mu.setUnary(p, 0, true);
    bool ok = true;
    for (const NFConjunct& c : nf.shape.conjuncts) {
      if (c.forallExists) continue;
      KType diag = mu.withDuplicatedFirst((unsigned)c.vars.size() - 1);
      if (!evalOnType(c.matrix, diag, c.vars)) {
        ok = false;
        break;
      }
    }
    if (ok) consistent.push_back(mu);
  }
  if (consistent.empty()) return true;
  for (const NFConjunct& c : nf.shape.conjuncts) {
    if (!c.forallExists) continue;
    std::set<std::string> keySet;
    collectBinaryAtoms(c.matrix, keySet);
    std::vector<std::string> keys(keySet.begin(), keySet.end());
    size_t l = c.vars.size();
    double work = std::pow((double)consistent.size(), (double)l) *
                  std::pow(2.0, (double)keys.size());
    if (keys.size() > 20 || work > 4e6) continue;  // too big to refute
    std::vector<size_t> pick(l, 0);
    bool witnessed = false;
    while (!witnessed) {
      std::map<std::string, const KType*> oneTypes;
      for (size_t i = 0; i < l; ++i) oneTypes[c.vars[i]] = &consistent[pick[i]];
      for (size_t bmask = 0; bmask < (size_t(1) << keys.size()); ++bmask) {
        std::map<std::string, bool> bin;
        for (size_t i = 0; i < keys.size(); ++i)
          bin[keys[i]] = (bmask >> i) & 1;
        if (evalOptimistic(c.matrix, oneTypes, bin)) {
          witnessed = true;
          break;
        }
      }
      size_t i = 0;
      while (i < l && ++pick[i] == consistent.size()) pick[i++] = 0;
      if (i == l) break;
    }
    if (!witnessed) return true;
  }
  return false;
}

LabelSet restrictLabels(const LabelSet& ls, const Signature& sig) {
  LabelSet out;
  for (const std::string& p : ls)
    if (sig.hasUnary(p)) out.insert(p);
  return out;
}

}  // namespace

const char* satVerdictName(SatVerdict v) {
  switch (v) {
    case SatVerdict::sat: return "sat";
    case SatVerdict::unsatWithinCaps: return "unsat-within-caps";
    case SatVerdict::unsatProved: return "unsat-proved";
  }
  return "?";
}

bool evalNormalFormOnLasso(const LassoWord& w, const FormulaPtr& f, unsigned k,
                           const Signature& sig) {
  std::optional<NFShape> shape = parseNormalFormShape(f);
  if (!shape) throw std::runtime_error("formula is not in normal form");
  unsigned kk = std::max({1u, k, shape->widthValue});
  for (const WordProfile& p : omegaProfiles(w, kk, sig))
    if (!isCompatible(p.F, *shape)) return false;
  return true;
}

SatResult satWord(const FormulaPtr& f, const Signature& sig,
                  const SatCaps& caps0) {
  requireFragment(f, sig, StructureClass::word);
  SatCaps caps = caps0;
  if (caps.maxLen < 1) throw std::runtime_error("maxLen must be positive");
  NormalFormResult nf = toNormalForm(f, sig);
  unsigned k = std::max(1u, nf.shape.widthValue);
  uint64_t bound = bounds(BoundKind::wordProfiles,
                          (unsigned)nf.extendedSig.unary.size(), k);
  if (bound != kBoundSentinel && (uint64_t)caps.maxLen > bound + 1)
    caps.maxLen = (size_t)(bound + 1);
  SatResult res;
  res.capsUsed = caps;
  res.strategy = caps.strategy == SatStrategy::brute ? "brute" : "profile";
  if (staticallyRefuted(nf)) {
    res.verdict = SatVerdict::unsatProved;
    return res;
  }
  EnumCaps ec;
  ec.maxLen = caps.maxLen;
  ec.guard = caps.guard;
  std::optional<WordModel> found;
  if (caps.strategy == SatStrategy::brute) {
    enumerateWords(sig, ec, [&](const WordModel& w) {
      if (evalFO(flatten(w), f)) {
        found = w;
        return false;
      }
      return true;
    });
  } else {
    enumerateWords(sig, ec, [&](const WordModel& w) {
      Structure ext = expandCanonical(flatten(w), nf);
      WordModel we = toWordModel(ext);
      for (size_t a = 0; a < we.size(); ++a)
        if (!isCompatible(wordProfile(we, k, a, nf.extendedSig).F, nf.shape))
          return true;
      found = w;
      return false;
    });
  }
  if (found) {
    if (!evalFO(flatten(*found), f))
      throw std::runtime_error("internal: witness fails re-evaluation");
    res.verdict = SatVerdict::sat;
    AnyStructure a;
    a.cls = StructureClass::word;
    a.word = *found;
    res.witness = std::move(a);
    return res;
  }
  res.verdict = (uint64_t)caps.maxLen >= bound ? SatVerdict::unsatProved
                                               : SatVerdict::unsatWithinCaps;
  return res;
}

SatResult satOmega(const FormulaPtr& f, const Signature& sig,
                   const SatCaps& caps0) {
  requireFragment(f, sig, StructureClass::omega);
  SatCaps caps = caps0;
  if (caps.maxPeriod < 1) throw std::runtime_error("maxPeriod must be positive");
  NormalFormResult nf = toNormalForm(f, sig);
  unsigned k = std::max(1u, nf.shape.widthValue);
  SatResult res;
  res.capsUsed = caps;
  res.strategy = "profile";
  if (staticallyRefuted(nf)) {
    res.verdict = SatVerdict::unsatProved;
    return res;
  }
  std::vector<LabelSet> lsets = allLabelSets(nf.extendedSig);
  double count = 0;
  for (size_t plen = 0; plen <= caps.maxPrefix; ++plen)
    for (size_t qlen = 1; qlen <= caps.maxPeriod; ++qlen)
      count += std::pow((double)lsets.size(), (double)(plen + qlen));
  if (count > (double)caps.guard)
    throw std::runtime_error("lasso enumeration exceeds guard");
  std::optional<LassoWord> found;
  for (size_t total = 1; total <= caps.maxPrefix + caps.maxPeriod && !found;
       ++total)
    for (size_t plen = 0; plen + 1 <= total && plen <= caps.maxPrefix && !found;
         ++plen) {
      size_t qlen = total - plen;
      if (qlen > caps.maxPeriod) continue;
      std::vector<size_t> pick(total, 0);
      while (true) {
        LassoWord w;
        for (size_t i = 0; i < plen; ++i) w.prefix.push_back(lsets[pick[i]]);
        for (size_t i = plen; i < total; ++i)
          w.period.push_back(lsets[pick[i]]);
        bool ok = true;
        for (const WordProfile& p : omegaProfiles(w, k, nf.extendedSig))
          if (!isCompatible(p.F, nf.shape)) {
            ok = false;
            break;
          }
        if (ok) {
          found = w;
          break;
        }
        size_t i = 0;
        while (i < total && ++pick[i] == lsets.size()) pick[i++] = 0;
        if (i == total) break;
      }
    }
  if (found) {
    if (!evalNormalFormOnLasso(*found, nf.formula, k, nf.extendedSig))
      throw std::runtime_error("internal: witness fails re-evaluation");
    AnyStructure a;
    a.cls = StructureClass::omega;
    for (const LabelSet& ls : found->prefix)
      a.lasso.prefix.push_back(restrictLabels(ls, sig));
    for (const LabelSet& ls : found->period)
      a.lasso.period.push_back(restrictLabels(ls, sig));
    res.verdict = SatVerdict::sat;
    res.witness = std::move(a);
    return res;
  }
  uint64_t bound = bounds(BoundKind::wordProfiles,
                          (unsigned)nf.extendedSig.unary.size(), k);
  res.verdict = ((uint64_t)caps.maxPrefix >= bound &&
                 (uint64_t)caps.maxPeriod >= bound)
                    ? SatVerdict::unsatProved
                    : SatVerdict::unsatWithinCaps;
  return res;
}

namespace {

// Memoized neighbor-recurrence evaluation for the tree profile strategy.
struct TreeComponentEngine {
  using Key = std::tuple<KType, std::set<KType>, std::set<KType>,
                         std::set<KType>>;
  std::map<Key, std::set<KType>> childA, parentB, nextL, prevR;
  std::map<std::array<std::set<KType>, 4>, bool> compatible;
  unsigned k;
  const NFShape* shape;

  const std::set<KType>& memo(
      std::map<Key, std::set<KType>>& cache, const KType& mu,
      const std::set<KType>& a, const std::set<KType>& b,
      const std::set<KType>& c,
      std::set<KType> (*fn)(const KType&, const std::set<KType>&,
                            const std::set<KType>&, const std::set<KType>&,
                            unsigned)) {
    Key key{mu, a, b, c};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, fn(mu, a, b, c, k)).first;
    return it->second;
  }

  bool nodeCompatible(const std::set<KType>& A, const std::set<KType>& B,
                      const std::set<KType>& L, const std::set<KType>& R) {
    std::array<std::set<KType>, 4> key{A, B, L, R};
    auto it = compatible.find(key);
    if (it == compatible.end())
      it = compatible
               .emplace(key, isCompatible(fulltypeTree(A, B, L, R, k), *shape))
               .first;
    return it->second;
  }

  // All nodes' components via the recurrences; true iff every node is
  // compatible with the normal form.
  bool accepts(const Structure& s, const Signature& sig) {
    size_t n = s.size();
    std::vector<std::vector<int>> kids = detail::childLists(s);
    std::vector<KType> mu;
    for (size_t i = 0; i < n; ++i) mu.push_back(typeOf(s, {(int)i}, sig));
    std::vector<std::set<KType>> A(n), B(n), L(n), R(n);
    // bottom-up: preorder indices descending visit children before parents
    for (size_t ii = n; ii-- > 0;) {
      const std::vector<int>& ch = kids[ii];
      if (ch.empty()) {
        B[ii] = {mu[ii]};
        continue;
      }
      L[ch[0]] = {mu[ch[0]]};
      for (size_t j = 1; j < ch.size(); ++j) {
        auto wrap = +[](const KType& m, const std::set<KType>& pb,
                        const std::set<KType>& pl, const std::set<KType>&,
                        unsigned kk) { return computeNextL(m, pb, pl, kk); };
        L[ch[j]] = memo(nextL, mu[ch[j]], B[ch[j - 1]], L[ch[j - 1]], {}, wrap);
      }
      R[ch.back()] = {mu[ch.back()]};
      for (size_t j = ch.size() - 1; j-- > 0;) {
        auto wrap = +[](const KType& m, const std::set<KType>& nb,
                        const std::set<KType>& nr, const std::set<KType>&,
                        unsigned kk) { return computePrevR(m, nb, nr, kk); };
        R[ch[j]] = memo(prevR, mu[ch[j]], B[ch[j + 1]], R[ch[j + 1]], {}, wrap);
      }
      B[ii] = memo(parentB, mu[ii], B[ch.back()], L[ch.back()], R[ch.back()],
                   &computeParentB);
    }
    A[0] = {mu[0]};
    L[0] = {mu[0]};
    R[0] = {mu[0]};
    // top-down: parents precede children in preorder
    for (size_t ii = 0; ii < n; ++ii)
      for (int c : kids[ii])
        A[c] = memo(childA, mu[c], A[ii], L[ii], R[ii], &computeChildA);
    for (size_t ii = 0; ii < n; ++ii)
      if (!nodeCompatible(A[ii], B[ii], L[ii], R[ii])) return false;
    return true;
  }
};

}  // namespace

SatResult satTree(const FormulaPtr& f, const Signature& sig,
                  const SatCaps& caps0) {
  requireFragment(f, sig, StructureClass::tree);
  SatCaps caps = caps0;
  NormalFormResult nf = toNormalForm(f, sig);
  unsigned k = std::max(1u, nf.shape.widthValue);
  SatResult res;
  res.capsUsed = caps;
  res.strategy = caps.strategy == SatStrategy::brute ? "brute" : "profile";
  if (caps.strategy == SatStrategy::profile &&
      (!sig.hasNav(Rel::lessh) || !sig.hasNav(Rel::lessv)))
    throw std::runtime_error(
        "the tree profile strategy requires lessh and lessv in the signature");
  if (staticallyRefuted(nf)) {
    res.verdict = SatVerdict::unsatProved;
    return res;
  }
  EnumCaps ec;
  ec.maxDepth = caps.maxDepth;
  ec.maxBranch = caps.maxBranch;
  ec.guard = caps.guard;
  std::optional<TreeModel> found;
  if (caps.strategy == SatStrategy::brute) {
    enumerateTrees(sig, ec, [&](const TreeModel& t) {
      if (evalFO(flatten(t), f)) {
        found = t;
        return false;
      }
      return true;
    });
  } else {
    TreeComponentEngine engine;
    engine.k = k;
    engine.shape = &nf.shape;
    enumerateTrees(sig, ec, [&](const TreeModel& t) {
      Structure ext = expandCanonical(flatten(t), nf);
      if (engine.accepts(ext, nf.extendedSig)) {
        found = t;
        return false;
      }
      return true;
    });
  }
  if (found) {
    if (!evalFO(flatten(*found), f))
      throw std::runtime_error("internal: witness fails re-evaluation");
    res.verdict = SatVerdict::sat;
    AnyStructure a;
    a.cls = StructureClass::tree;
    a.tree = *found;
    res.witness = std::move(a);
    return res;
  }
  uint64_t depthBound = bounds(BoundKind::fgPath,
                               (unsigned)nf.extendedSig.unary.size(), k);
  uint64_t branchBound = bounds(BoundKind::ffPath,
                                (unsigned)nf.extendedSig.unary.size(), k);
  res.verdict = ((uint64_t)caps.maxDepth + 1 >= depthBound &&
                 (uint64_t)caps.maxBranch >= branchBound)
                    ? SatVerdict::unsatProved
                    : SatVerdict::unsatWithinCaps;
  return res;
}

}  // namespace odfkit
