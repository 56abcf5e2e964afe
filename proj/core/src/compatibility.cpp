#include <stdexcept>

#include "odfkit/profiles.hpp"

namespace odfkit {

bool isCompatible(const std::set<KType>& F, const NFShape& shape) {
  unsigned maxArity = 0;
  for (const KType& t : F) maxArity = std::max(maxArity, t.arity);
  for (const NFConjunct& c : shape.conjuncts) {
    unsigned l = (unsigned)c.vars.size();
    if (l > maxArity)
      throw std::runtime_error("profile arity below normal-form width");
    if (c.forallExists) {
      bool witnessed = false;
      for (const KType& t : F)
        if (t.arity == l && evalOnType(c.matrix, t, c.vars)) {
          witnessed = true;
          break;
        }
      if (!witnessed) return false;
    } else {
      for (const KType& t : F)
        if (t.arity == l && !evalOnType(c.matrix, t, c.vars)) return false;
    }
  }
  return true;
}

}  // namespace odfkit
