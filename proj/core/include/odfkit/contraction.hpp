#pragma once

#include "odfkit/profiles.hpp"

namespace odfkit {

// Audit trail of a contraction run; witnesses are indices valid in the
// structure as it was when the step applied.
struct ContractionStep {
  std::string kind;  // "word", "vertical", "horizontal"
  size_t witnessA = 0, witnessB = 0;
  std::string detail;
};

struct ContractionTrace {
  std::vector<ContractionStep> steps;
  size_t beforeSize = 0, afterSize = 0;
  // Input index (position, or preorder for trees) of each output element.
  std::vector<size_t> sourceIndex;
};

// Repeatedly removes the segment between the leftmost pair of positions with
// equal k-profiles (keeping the left one) until all profiles are pairwise
// distinct. Surviving positions keep their original profiles.
std::pair<WordModel, ContractionTrace> contractWord(const WordModel& w,
                                                    unsigned k,
                                                    const Signature& sig);

// Rebuild an ultimately periodic word M0.M1^omega realizing exactly the same
// profiles: M0 the shortest prefix containing all finitely-realized profiles
// (padded to length >= k-1 for degenerate inputs), M1 a loop segment starting
// and ending at equal profiles and covering every infinitely-realized one.
struct PeriodicResult {
  LassoWord lasso;
  // Source position (index into the input's infinite word) of each output
  // prefix position followed by each period position.
  std::vector<size_t> sourceIndex;
  bool paddedPrefix = false;
};

PeriodicResult buildPeriodicOmega(const LassoWord& w, unsigned k,
                                  const Signature& sig);

// Vertical tree contraction: replace the subtree at a node a by the subtree
// of a descendant a' when a,a' have equal B-components and their relevant
// children b,b' equal A-components, until no pair qualifies.
std::pair<TreeModel, ContractionTrace> contractTreeVertical(
    const TreeModel& t, unsigned k, const Signature& sig);

// Horizontal tree contraction: remove the sibling subtrees between two
// siblings with equal L- and R-components.
std::pair<TreeModel, ContractionTrace> contractTreeHorizontal(
    const TreeModel& t, unsigned k, const Signature& sig);

// Shrink a tree model of a vertical CoreXPath formula (only the transitive
// down/up modalities) so depth and degree are bounded in the formula size
// while the formula stays true at the image of c.
struct ShrinkResult {
  TreeModel tree;
  size_t focus = 0;  // surviving image of c (preorder index)
};
ShrinkResult shrinkCoreXPathModel(const TreeModel& t, const ModalPtr& m,
                                  size_t c);

}  // namespace odfkit
