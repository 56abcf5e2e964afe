#include <algorithm>
#include <stdexcept>

#include "odfkit/contraction.hpp"

namespace odfkit {

PeriodicResult buildPeriodicOmega(const LassoWord& w, unsigned k,
                                  const Signature& sig) {
  size_t p = w.period.size(), q = w.prefix.size();
  if (p == 0) throw std::runtime_error("empty period");

  // Find the first period copy whose position-wise profile sequence repeats
  // in the next copy; from there on the profile sequence is periodic.
  size_t c = 1;
  std::vector<WordProfile> prof;
  size_t horizon = 0;
  for (;; ++c) {
    if (c > 64)
      throw std::runtime_error("periodic construction: no stable copy found");
    WordModel u = w.unroll(c + 2 + 2 * k + 2);
    horizon = q + (c + 2) * p;
    prof.clear();
    for (size_t a = 0; a < horizon; ++a)
      prof.push_back(wordProfile(u, k, a, sig));
    bool stable = true;
    for (size_t i = 0; i < p && stable; ++i)
      if (!(prof[q + c * p + i] == prof[q + (c + 1) * p + i])) stable = false;
    if (stable) break;
  }
  // Profiles realized from the stable copy onward recur forever.
  std::set<WordProfile> stableSet(prof.begin() + (long)(q + c * p),
                                  prof.begin() + (long)(q + (c + 1) * p));
  // Start of the loop search: past the last finitely-realized profile.
  size_t lastFinite = 0;
  bool anyFinite = false;
  for (size_t a = 0; a < q + c * p; ++a)
    if (!stableSet.count(prof[a])) {
      lastFinite = a;
      anyFinite = true;
    }
  size_t p0 = anyFinite ? lastFinite + 1 : 0;
  PeriodicResult res;
  if (p0 + 1 < k) {  // degenerate input: pad the prefix to length k-1
    p0 = k - 1;
    res.paddedPrefix = true;
  }
  if (!stableSet.count(prof[p0]))
    throw std::runtime_error("periodic construction: unstable loop start");

  // Loop end: equal profile to the start, all stable profiles covered.
  size_t aStar = p0, bStar = 0;
  std::set<WordProfile> seen;
  for (size_t b = aStar + 1; b < horizon; ++b) {
    seen.insert(prof[b - 1]);
    if (prof[b] == prof[aStar] &&
        std::includes(seen.begin(), seen.end(), stableSet.begin(),
                      stableSet.end())) {
      bStar = b;
      break;
    }
  }
  if (bStar == 0)
    throw std::runtime_error("periodic construction: loop end not found");

  WordModel u = w.unroll(c + 2 + 2 * k + 2);
  res.lasso.prefix.assign(u.positions.begin(), u.positions.begin() + (long)aStar);
  res.lasso.period.assign(u.positions.begin() + (long)aStar,
                          u.positions.begin() + (long)bStar);
  for (size_t i = 0; i < bStar; ++i) res.sourceIndex.push_back(i);
  return res;
}

}  // namespace odfkit
