#include <algorithm>
#include <stdexcept>

#include "odfkit/profiles.hpp"

namespace odfkit {

WordProfile wordProfile(const WordModel& w, unsigned k, size_t a,
                        const Signature& sig) {
  if (a >= w.size()) throw std::runtime_error("position out of range");
  for (Rel r : sig.nav)
    if (r != Rel::succh && r != Rel::lessh)
      throw std::runtime_error("word profiles require a word signature");
  Structure s = flatten(w);
  WordProfile prof;
  size_t n = w.size();
  for (unsigned arity = 1; arity <= k; ++arity) {
    std::vector<int> tuple(arity, 0);
    tuple[0] = (int)a;
    // odometer over the non-first slots
    while (true) {
      KType t = typeOf(s, tuple, sig);
      prof.F.insert(t);
      bool allLeft = true, allRight = true;
      for (unsigned i = 1; i < arity; ++i) {
        if (tuple[i] >= (int)a) allLeft = false;
        if (tuple[i] <= (int)a) allRight = false;
      }
      if (allLeft) prof.L.insert(t);
      if (allRight) prof.R.insert(t);
      unsigned i = 1;
      for (; i < arity; ++i) {
        if (++tuple[i] < (int)n) break;
        tuple[i] = 0;
      }
      if (i == arity) break;
    }
  }
  return prof;
}

namespace {

void permuteTail(const KType& t, std::set<KType>& out) {
  std::vector<unsigned> perm(t.arity);
  for (unsigned i = 0; i < t.arity; ++i) perm[i] = i;
  do {
    out.insert(t.permuted(perm));
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

}  // namespace

std::set<KType> fulltypeWord(const std::set<KType>& L,
                             const std::set<KType>& R, unsigned k) {
  std::set<KType> out;
  if (L.empty() || R.empty())
    throw std::runtime_error("components must contain the 1-type");
  for (const KType& pl : L) {
    for (const KType& pr : R) {
      if (!(pl.oneTypeOf(0) == pr.oneTypeOf(0)))
        throw std::runtime_error("components disagree on the base 1-type");
      unsigned sl = pl.arity, sr = pr.arity;
      if (sl + sr - 1 > k) continue;
      Signature sig;
      sig.unary = pl.unaryNames;
      sig.nav.insert(pl.navRels.begin(), pl.navRels.end());
      KType t = KType::blank(sig, sl + sr - 1);
      // slots: 0 = shared first var; 1..sl-1 from pl; sl.. from pr
      auto fromL = [&](unsigned i) { return i < sl; };
      auto srcL = [&](unsigned i) { return i; };
      auto srcR = [&](unsigned i) { return i == 0 ? 0 : i - sl + 1; };
      for (size_t p = 0; p < t.unaryNames.size(); ++p)
        for (unsigned i = 0; i < t.arity; ++i)
          t.setUnary(p, i,
                     fromL(i) ? pl.unary(p, srcL(i)) : pr.unary(p, srcR(i)));
      // slot 0 belongs to both groups, so within-group literals cover every
      // pair involving the first variable.
      auto inL = [&](unsigned i) { return i < sl; };
      auto inR = [&](unsigned i) { return i == 0 || i >= sl; };
      for (size_t r = 0; r < t.navRels.size(); ++r) {
        Rel rel = t.navRels[r];
        for (unsigned i = 0; i < t.arity; ++i)
          for (unsigned j = 0; j < t.arity; ++j) {
            bool v;
            if (inL(i) && inL(j))
              v = pl.nav(r, srcL(i), srcL(j));
            else if (inR(i) && inR(j))
              v = pr.nav(r, srcR(i), srcR(j));
            else if (inL(i))
              v = rel == Rel::lessh;  // strictly left precedes strictly right
            else
              v = false;
            t.setNav(r, i, j, v);
          }
      }
      for (unsigned i = 0; i < t.arity; ++i)
        for (unsigned j = i + 1; j < t.arity; ++j) {
          bool v;
          if (fromL(i) && fromL(j))
            v = pl.eq(srcL(i), srcL(j));
          else if (!fromL(i) && !fromL(j))
            v = pr.eq(srcR(i), srcR(j));
          else if (i == 0)
            v = pr.eq(0, srcR(j));
          else
            v = false;  // strictly left vs strictly right
          t.setEq(i, j, v);
        }
      for (unsigned extra = 0; t.arity + extra <= k; ++extra)
        permuteTail(t.withDuplicatedFirst(extra), out);
    }
  }
  return out;
}

std::set<WordProfile> omegaProfiles(const LassoWord& w, unsigned k,
                                    const Signature& sig) {
  if (k < 1) throw std::runtime_error("k must be positive");
  // Profiles of prefix positions and the first `sample` period copies,
  // computed on an unrolling that keeps 2k+2 further copies of right context.
  auto collect = [&](size_t sample) {
    WordModel u = w.unroll(sample + 2 * k + 2);
    std::set<WordProfile> out;
    size_t upTo = w.prefix.size() + sample * w.period.size();
    for (size_t a = 0; a < upTo && a < u.size(); ++a)
      out.insert(wordProfile(u, k, a, sig));
    return out;
  };
  // The sampled set only grows with the sample depth; iterate to a fixpoint
  // held for k+1 consecutive depths.
  size_t sample = k;
  std::set<WordProfile> result = collect(sample);
  size_t stable = 0;
  while (stable <= k) {
    if (sample > 64)
      throw std::runtime_error(
          "omega profile instability: sampling depth exhausted");
    std::set<WordProfile> next = collect(++sample);
    stable = next == result ? stable + 1 : 0;
    result = std::move(next);
  }
  return result;
}

}  // namespace odfkit
