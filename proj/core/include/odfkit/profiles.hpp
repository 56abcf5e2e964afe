#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "odfkit/ktype.hpp"
#include "odfkit/normalform.hpp"

namespace odfkit {

// Word profile of a position a: F holds the s-types (1 <= s <= k) of all
// tuples starting at a; L (resp. R) those of tuples whose other elements all
// lie strictly left (resp. right) of a.
struct WordProfile {
  std::set<KType> F, L, R;

  const KType& oneType() const { return *L.begin(); }  // arity-1 member
  bool operator==(const WordProfile& o) const {
    return F == o.F && L == o.L && R == o.R;
  }
  bool operator<(const WordProfile& o) const {
    if (F != o.F) return F < o.F;
    if (L != o.L) return L < o.L;
    return R < o.R;
  }
};

WordProfile wordProfile(const WordModel& w, unsigned k, size_t a,
                        const Signature& sig);

// Reconstruct F from L and R by combining one type from each side: shared
// first variable, left elements strictly below right elements in both orders,
// then first-variable duplication and permutations of the later variables.
std::set<KType> fulltypeWord(const std::set<KType>& L,
                             const std::set<KType>& R, unsigned k);

// Profiles realized in prefix.period^omega, computed on a finite unrolling
// with 2k+2 period copies and checked stable under one more copy.
std::set<WordProfile> omegaProfiles(const LassoWord& w, unsigned k,
                                    const Signature& sig);

// Tree profile of a node a: F as above; witnesses' other elements all in the
// subtree of a (B), in subtrees of earlier (L) or later (R) siblings of a, or
// elsewhere (A).
struct TreeProfile {
  std::set<KType> F, A, B, L, R;

  const KType& oneType() const { return *B.begin(); }
  bool operator==(const TreeProfile& o) const {
    return F == o.F && A == o.A && B == o.B && L == o.L && R == o.R;
  }
  bool operator<(const TreeProfile& o) const {
    if (F != o.F) return F < o.F;
    if (A != o.A) return A < o.A;
    if (B != o.B) return B < o.B;
    if (L != o.L) return L < o.L;
    return R < o.R;
  }
};

TreeProfile treeProfile(const TreeModel& t, unsigned k, size_t a,
                        const Signature& sig);

// Combine component types into F (tree version): at most one type per
// component, shared first variable, cross-position literals fixed by the
// component geometry, then duplication, permutation, and the arity cap.
std::set<KType> fulltypeTree(const std::set<KType>& A, const std::set<KType>& B,
                             const std::set<KType>& L, const std::set<KType>& R,
                             unsigned k);

// Component of a neighboring node, determined by this node's components and
// the neighbor's 1-type mu.
enum class ComponentKind { A, B, L, R };

// Each takes the 1-type of the node whose component is computed plus the
// components of the relevant neighbor (that neighbor is the pivot of the
// inputs): the A-component of a child from its parent's A, L, R; the
// B-component of a parent from one child's B, L, R; the L-component of a node
// from its previous sibling's B and L; the R-component from the next
// sibling's B and R.
std::set<KType> computeChildA(const KType& childOneType,
                              const std::set<KType>& pa,
                              const std::set<KType>& pl,
                              const std::set<KType>& pr, unsigned k);
std::set<KType> computeParentB(const KType& parentOneType,
                               const std::set<KType>& cb,
                               const std::set<KType>& cl,
                               const std::set<KType>& cr, unsigned k);
std::set<KType> computeNextL(const KType& selfOneType,
                             const std::set<KType>& prevB,
                             const std::set<KType>& prevL, unsigned k);
std::set<KType> computePrevR(const KType& selfOneType,
                             const std::set<KType>& nextB,
                             const std::set<KType>& nextR, unsigned k);

// Per-node labeling with 1-types and candidate profiles.
struct ProfileLabeling {
  std::vector<KType> omega;      // 1-type per node (preorder index)
  std::vector<TreeProfile> xi;   // profile per node
};

struct ConsistencyReport {
  bool ok = true;
  std::string violated;  // first violated condition (a)..(f) with node
};

ConsistencyReport isLocallyConsistent(const TreeModel& t,
                                      const ProfileLabeling& lab, unsigned k,
                                      const Signature& sig);

// Compatibility of a realized type set F with a normal-form formula: every
// l-type of F satisfies each universal matrix, and every forall-exists
// conjunct has a witnessing type in F.
bool isCompatible(const std::set<KType>& F, const NFShape& shape);

enum class BoundKind { wordProfiles, treeProfiles, ffPath, fgPath };

// Saturating sound upper bounds; kBoundSentinel means "effectively
// unbounded" at desk scale.
inline constexpr uint64_t kBoundSentinel = UINT64_MAX;
uint64_t bounds(BoundKind kind, unsigned sigma0Size, unsigned k);

// The source analysis' closed-form word-profile expression, exposed for
// reference; vanishes to small values at k=1 and is not used as a cap.
uint64_t wordProfileClosedForm(unsigned sigma0Size, unsigned k);

}  // namespace odfkit
