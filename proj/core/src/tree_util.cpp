#include "tree_util.hpp"

#include <stdexcept>

namespace odfkit::detail {

std::vector<std::vector<int>> childLists(const Structure& s) {
  std::vector<std::vector<int>> kids(s.size());
  for (size_t i = 1; i < s.size(); ++i) kids[s.parent[i]].push_back((int)i);
  return kids;
}

namespace {

NNode buildNode(const Structure& s, const std::vector<std::vector<int>>& kids,
                int i) {
  NNode n;
  n.labels = s.labels[i];
  n.orig = i;
  for (int c : kids[i]) n.kids.push_back(buildNode(s, kids, c));
  return n;
}

void emit(const NNode& n, const NodeAddr& addr, TreeModel& out,
          std::vector<int>* origOut) {
  out.nodes.push_back(addr);
  out.labels.push_back(n.labels);
  if (origOut) origOut->push_back(n.orig);
  for (size_t i = 0; i < n.kids.size(); ++i) {
    NodeAddr a = addr;
    a.push_back((int)i);
    emit(n.kids[i], a, out, origOut);
  }
}

// Kept nodes of the subtree at i, re-parented to the nearest kept ancestor.
std::vector<NNode> gather(const Structure& s,
                          const std::vector<std::vector<int>>& kids,
                          const std::vector<char>& keep, int i) {
  std::vector<NNode> sub;
  for (int c : kids[i])
    for (NNode& n : gather(s, kids, keep, c)) sub.push_back(std::move(n));
  if (!keep[i]) return sub;
  NNode n;
  n.labels = s.labels[i];
  n.orig = i;
  n.kids = std::move(sub);
  return {std::move(n)};
}

}  // namespace

NNode toNested(const TreeModel& t) {
  Structure s = flatten(t);
  return buildNode(s, childLists(s), 0);
}

TreeModel toTree(const NNode& root, std::vector<int>* origOut) {
  TreeModel out;
  if (origOut) origOut->clear();
  emit(root, {}, out, origOut);
  return out;
}

NNode inducedTree(const TreeModel& t, const std::vector<char>& keep) {
  if (keep.empty() || !keep[0])
    throw std::runtime_error("induced tree must keep the root");
  Structure s = flatten(t);
  return std::move(gather(s, childLists(s), keep, 0)[0]);
}

}  // namespace odfkit::detail
