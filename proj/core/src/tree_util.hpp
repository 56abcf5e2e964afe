#pragma once

#include <vector>

#include "odfkit/structures.hpp"

namespace odfkit::detail {

// Mutable nested view of a tree; orig tracks the preorder index in the tree
// the node came from (-1 for synthesized nodes).
struct NNode {
  LabelSet labels;
  int orig = -1;
  std::vector<NNode> kids;
};

NNode toNested(const TreeModel& t);

// Back to the address representation; if origOut is given, origOut[i] is the
// orig field of preorder node i.
TreeModel toTree(const NNode& root, std::vector<int>* origOut = nullptr);

// Children lists by preorder index, in sibling order.
std::vector<std::vector<int>> childLists(const Structure& s);

// Induced tree on the kept nodes (keep[0] must hold): each kept node's parent
// becomes its nearest kept strict ancestor.
NNode inducedTree(const TreeModel& t, const std::vector<char>& keep);

}  // namespace odfkit::detail
