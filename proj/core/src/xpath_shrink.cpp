#include <algorithm>
#include <stdexcept>

#include "odfkit/contraction.hpp"
#include "odfkit/semantics.hpp"
#include "tree_util.hpp"

namespace odfkit {

namespace {

void requireVerticalTransitive(const ModalPtr& m) {
  if (m->kind == MKind::Diamond || m->kind == MKind::Box)
    if (m->dir != Dir::downPlus && m->dir != Dir::upPlus)
      throw std::runtime_error(
          "model shrinking supports only the transitive vertical modalities");
  for (const ModalPtr& c : m->kids) requireVerticalTransitive(c);
}

ModalPtr modalNnf(const ModalPtr& m, bool neg) {
  switch (m->kind) {
    case MKind::True:
      return neg ? mFalse() : mTrue();
    case MKind::False:
      return neg ? mTrue() : mFalse();
    case MKind::Prop:
      return neg ? mNot(m) : m;
    case MKind::Not:
      return modalNnf(m->kids[0], !neg);
    case MKind::And:
      return neg ? mOr(modalNnf(m->kids[0], true), modalNnf(m->kids[1], true))
                 : mAnd(modalNnf(m->kids[0], false),
                        modalNnf(m->kids[1], false));
    case MKind::Or:
      return neg ? mAnd(modalNnf(m->kids[0], true), modalNnf(m->kids[1], true))
                 : mOr(modalNnf(m->kids[0], false), modalNnf(m->kids[1], false));
    case MKind::Diamond:
      return neg ? mBox(m->dir, modalNnf(m->kids[0], true))
                 : mDiamond(m->dir, modalNnf(m->kids[0], false));
    case MKind::Box:
      return neg ? mDiamond(m->dir, modalNnf(m->kids[0], true))
                 : mBox(m->dir, modalNnf(m->kids[0], false));
  }
  throw std::runtime_error("bad modal node");
}

void collectDiamonds(const ModalPtr& m, std::vector<ModalPtr>& down,
                     std::vector<ModalPtr>& up) {
  if (m->kind == MKind::Diamond)
    (m->dir == Dir::downPlus ? down : up).push_back(m->kids[0]);
  for (const ModalPtr& c : m->kids) collectDiamonds(c, down, up);
}

}  // namespace

ShrinkResult shrinkCoreXPathModel(const TreeModel& t, const ModalPtr& m,
                                  size_t c) {
  if (c >= t.size()) throw std::runtime_error("focus node out of range");
  requireVerticalTransitive(m);
  ModalPtr nnf = modalNnf(m, false);
  {
    Structure s = flatten(t);
    if (!evalModal(s, nnf, (int)c))
      throw std::runtime_error("formula does not hold at the focus node");
  }
  std::vector<ModalPtr> down, up;
  collectDiamonds(nnf, down, up);

  // Pass 1, vertical paths: keep the focus, the root, the deepest witnesses
  // of every down-diamond body and the shallowest witnesses of every
  // up-diamond body. At most one survivor per body on any root path, and
  // every kept node keeps a witness below/above it.
  Structure s = flatten(t);
  size_t n = t.size();
  std::vector<char> keep(n, 0);
  keep[0] = 1;
  keep[c] = 1;
  auto holds = [&](const ModalPtr& body, size_t a) {
    return evalModal(s, body, (int)a);
  };
  for (const ModalPtr& body : down)
    for (size_t a = 0; a < n; ++a) {
      if (!holds(body, a)) continue;
      bool extremal = true;
      for (size_t b = 0; b < n && extremal; ++b)
        if (s.isAncestor((int)a, (int)b) && holds(body, b)) extremal = false;
      if (extremal) keep[a] = 1;
    }
  for (const ModalPtr& body : up)
    for (size_t a = 0; a < n; ++a) {
      if (!holds(body, a)) continue;
      bool extremal = true;
      for (size_t b = 0; b < n && extremal; ++b)
        if (s.isAncestor((int)b, (int)a) && holds(body, b)) extremal = false;
      if (extremal) keep[a] = 1;
    }
  detail::NNode root = detail::inducedTree(t, keep);

  // Pass 2, degree: top-down, keep under each node only the child subtrees
  // containing the focus or a deepest witness of some down-diamond body.
  std::vector<int> orig;
  TreeModel cur = detail::toTree(root, &orig);
  // breadth-first worklist of node addresses
  std::vector<NodeAddr> queue{{}};
  while (!queue.empty()) {
    NodeAddr addr = queue.front();
    queue.erase(queue.begin());
    Structure cs = flatten(cur);
    int a = cur.indexOf(addr);
    std::vector<char> mark(cur.size(), 0);
    for (size_t i = 0; i < cur.size(); ++i)
      if (orig[i] == (int)c && cs.isAncestor(a, (int)i)) mark[i] = 1;
    for (const ModalPtr& body : down)
      for (size_t i = 0; i < cur.size(); ++i) {
        if (!cs.isAncestor(a, (int)i) || !evalModal(cs, body, (int)i)) continue;
        bool extremal = true;
        for (size_t b = 0; b < cur.size() && extremal; ++b)
          if (cs.isAncestor((int)i, (int)b) && evalModal(cs, body, (int)b))
            extremal = false;
        if (extremal) {
          mark[i] = 1;
          break;  // one witness per body suffices
        }
      }
    std::vector<char> keepChild;
    std::vector<std::vector<int>> kids = detail::childLists(cs);
    for (int ch : kids[a]) {
      bool any = mark[ch];
      for (size_t i = 0; i < cur.size() && !any; ++i)
        if (mark[i] && cs.isAncestor(ch, (int)i)) any = true;
      keepChild.push_back(any ? 1 : 0);
    }
    detail::NNode r2 = detail::toNested(cur);
    detail::NNode* node = &r2;
    for (int step : addr) node = &node->kids[step];
    std::vector<detail::NNode> kept;
    for (size_t i = 0; i < node->kids.size(); ++i)
      if (keepChild[i]) kept.push_back(std::move(node->kids[i]));
    node->kids = std::move(kept);
    // preserve the original-node bookkeeping across the rebuild
    std::vector<int> newOrig;
    detail::NNode carry = r2;
    std::vector<int> tmp;
    TreeModel next = detail::toTree(carry, &tmp);
    // map: toTree(orig field) already carries cur indices; translate to t's
    for (int& o : tmp) o = o >= 0 ? orig[o] : -1;
    cur = next;
    orig = tmp;
    // enqueue surviving children of a
    Structure ns = flatten(cur);
    std::vector<std::vector<int>> nkids = detail::childLists(ns);
    int na = cur.indexOf(addr);
    for (int ch : nkids[na]) queue.push_back(cur.nodes[ch]);
  }

  ShrinkResult out;
  out.tree = cur;
  out.focus = 0;
  for (size_t i = 0; i < orig.size(); ++i)
    if (orig[i] == (int)c) out.focus = i;
  return out;
}

}  // namespace odfkit
