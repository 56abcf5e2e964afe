#include <stdexcept>

#include "odfkit/contraction.hpp"
#include "tree_util.hpp"

namespace odfkit {

namespace {

void requireContractionSig(const Signature& sig) {
  if (!sig.hasNav(Rel::lessh) || !sig.hasNav(Rel::lessv))
    throw std::runtime_error(
        "tree contraction requires lessh and lessv in the signature");
}

// Indices of the subtree of b, preorder, b first.
void subtreeOf(const std::vector<std::vector<int>>& kids, int b,
               std::vector<int>& out) {
  out.push_back(b);
  for (int c : kids[b]) subtreeOf(kids, c, out);
}

detail::NNode* nodeAt(detail::NNode& root, const NodeAddr& addr) {
  detail::NNode* n = &root;
  for (int i : addr) n = &n->kids[i];
  return n;
}

}  // namespace

std::pair<TreeModel, ContractionTrace> contractTreeVertical(
    const TreeModel& t, unsigned k, const Signature& sig) {
  requireContractionSig(sig);
  TreeModel cur = t;
  ContractionTrace trace;
  trace.beforeSize = t.size();
  std::vector<size_t> orig(t.size());
  for (size_t i = 0; i < t.size(); ++i) orig[i] = i;
  while (true) {
    Structure s = flatten(cur);
    size_t n = cur.size();
    std::vector<std::vector<int>> kids = detail::childLists(s);
    std::vector<TreeProfile> prof;
    for (size_t i = 0; i < n; ++i)
      prof.push_back(treeProfile(cur, k, i, sig));
    // first quadruple in preorder: a with child b, a2 inside the subtree of
    // b with a child b2, matching below-components at a,a2 and
    // above-components at b,b2
    int a = -1, a2 = -1;
    for (size_t i = 0; i < n && a < 0; ++i)
      for (int b : kids[i]) {
        std::vector<int> sub;
        subtreeOf(kids, b, sub);
        for (int cand : sub) {
          if (kids[cand].empty()) continue;
          if (!(prof[i].B == prof[cand].B)) continue;
          bool childMatch = false;
          for (int b2 : kids[cand])
            if (prof[b].A == prof[b2].A) {
              childMatch = true;
              break;
            }
          if (childMatch) {
            a = (int)i;
            a2 = cand;
            break;
          }
        }
        if (a >= 0) break;
      }
    if (a < 0) break;
    ContractionStep step;
    step.kind = "vertical";
    step.witnessA = (size_t)a;
    step.witnessB = (size_t)a2;
    step.detail = "subtree below " + addrToString(cur.nodes[a]) +
                  " replaced by the one below " + addrToString(cur.nodes[a2]);
    trace.steps.push_back(step);
    detail::NNode root = detail::toNested(cur);
    detail::NNode* na = nodeAt(root, cur.nodes[a]);
    detail::NNode* nb = nodeAt(root, cur.nodes[a2]);
    na->kids = std::move(nb->kids);
    std::vector<int> src;
    cur = detail::toTree(root, &src);
    std::vector<size_t> next;
    for (int o : src) next.push_back(orig[o]);
    orig = std::move(next);
  }
  trace.afterSize = cur.size();
  trace.sourceIndex = orig;
  return {cur, trace};
}

std::pair<TreeModel, ContractionTrace> contractTreeHorizontal(
    const TreeModel& t, unsigned k, const Signature& sig) {
  requireContractionSig(sig);
  TreeModel cur = t;
  ContractionTrace trace;
  trace.beforeSize = t.size();
  std::vector<size_t> orig(t.size());
  for (size_t i = 0; i < t.size(); ++i) orig[i] = i;
  while (true) {
    Structure s = flatten(cur);
    size_t n = cur.size();
    std::vector<std::vector<int>> kids = detail::childLists(s);
    std::vector<TreeProfile> prof;
    for (size_t i = 0; i < n; ++i)
      prof.push_back(treeProfile(cur, k, i, sig));
    // leftmost sibling pair with equal left- and right-components; the
    // segment from the first sibling up to (excluding) the second is removed
    int parent = -1, ci = -1, cj = -1;
    for (size_t e = 0; e < n && parent < 0; ++e) {
      const std::vector<int>& ch = kids[e];
      for (size_t j = 1; j < ch.size() && parent < 0; ++j)
        for (size_t i = 0; i < j; ++i)
          if (prof[ch[i]].L == prof[ch[j]].L &&
              prof[ch[i]].R == prof[ch[j]].R) {
            parent = (int)e;
            ci = (int)i;
            cj = (int)j;
            break;
          }
    }
    if (parent < 0) break;
    ContractionStep step;
    step.kind = "horizontal";
    step.witnessA = (size_t)kids[parent][ci];
    step.witnessB = (size_t)kids[parent][cj];
    step.detail = "siblings " + addrToString(cur.nodes[kids[parent][ci]]) +
                  " through the one before " +
                  addrToString(cur.nodes[kids[parent][cj]]) + " removed";
    trace.steps.push_back(step);
    detail::NNode root = detail::toNested(cur);
    detail::NNode* pe = nodeAt(root, cur.nodes[parent]);
    pe->kids.erase(pe->kids.begin() + ci, pe->kids.begin() + cj);
    std::vector<int> src;
    cur = detail::toTree(root, &src);
    std::vector<size_t> next;
    for (int o : src) next.push_back(orig[o]);
    orig = std::move(next);
  }
  trace.afterSize = cur.size();
  trace.sourceIndex = orig;
  return {cur, trace};
}

}  // namespace odfkit
