#include "odfkit/profiles.hpp"

namespace odfkit {

namespace {

uint64_t satMul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kBoundSentinel / b) return kBoundSentinel;
  return a * b;
}

uint64_t satAdd(uint64_t a, uint64_t b) {
  if (a > kBoundSentinel - b) return kBoundSentinel;
  return a + b;
}

uint64_t satPow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  while (exp--) {
    r = satMul(r, base);
    if (r == kBoundSentinel) return r;
  }
  return r;
}

uint64_t satPow2(uint64_t exp) {
  if (exp >= 64) return kBoundSentinel;
  return uint64_t(1) << exp;
}

// Count of s-types over sigma0 as a function of k: sum over arities of
// (1-type choices)^s times an over-count of the order/equality literals per
// variable pair (9 = 3 order configurations squared, generously).
uint64_t typeCount(unsigned sigma0, unsigned k) {
  uint64_t total = 0;
  for (unsigned s = 1; s <= k; ++s)
    total = satAdd(total, satMul(satPow(satPow2(sigma0), s),
                                 satPow(9, (uint64_t)s * (s - 1))));
  return total;
}

// Count of component values: a component is a set of types sharing a 1-type;
// at k=1 it is the singleton of that 1-type.
uint64_t componentCount(unsigned sigma0, unsigned k) {
  if (k <= 1) return satPow2(sigma0);
  return satPow2(typeCount(sigma0, k));
}

}  // namespace

uint64_t wordProfileClosedForm(unsigned sigma0Size, unsigned k) {
  uint64_t s = sigma0Size;
  uint64_t left = satAdd(satPow2(satMul(s, 2 * (uint64_t)k - 1)),
                         2 * (uint64_t)k - 2);
  uint64_t right = satAdd(
      satMul(satMul(2, satPow2(satMul(s, k))), satMul(5 * (uint64_t)k, k - 1)),
      1);
  return satMul(left, right);
}

uint64_t bounds(BoundKind kind, unsigned sigma0Size, unsigned k) {
  uint64_t comp = componentCount(sigma0Size, k);
  switch (kind) {
    case BoundKind::wordProfiles:
      // determined by the (L,R) component pair
      return satMul(comp, comp);
    case BoundKind::treeProfiles:
      // determined by (A,B,L,R)
      return satPow(comp, 4);
    case BoundKind::ffPath:
      // horizontal: siblings with an equal (L,R) pair admit contraction
      return satAdd(satMul(comp, comp), 1);
    case BoundKind::fgPath:
      // vertical: pairs of profiles plus possibly a last element
      return satAdd(
          satMul(2, satMul(bounds(BoundKind::treeProfiles, sigma0Size, k),
                           bounds(BoundKind::treeProfiles, sigma0Size, k))),
          1);
  }
  return kBoundSentinel;
}

}  // namespace odfkit
