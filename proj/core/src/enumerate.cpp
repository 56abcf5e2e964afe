#include <algorithm>
#include <stdexcept>

#include "odfkit/structures.hpp"

namespace odfkit {

namespace {

std::vector<LabelSet> allLabelSets(const Signature& sig) {
  size_t n = sig.unary.size();
  std::vector<LabelSet> out;
  out.reserve(size_t(1) << n);
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    LabelSet ls;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) ls.insert(sig.unary[i]);
    out.push_back(std::move(ls));
  }
  return out;
}

struct Shape {
  std::vector<Shape> kids;
  size_t count() const {
    size_t n = 1;
    for (auto& k : kids) n += k.count();
    return n;
  }
};

void shapesUpToDepth(size_t maxDepth, size_t maxBranch,
                     std::vector<Shape>& out) {
  out.clear();
  out.push_back({});  // single node
  if (maxDepth == 0) return;
  std::vector<Shape> sub;
  shapesUpToDepth(maxDepth - 1, maxBranch, sub);
  std::vector<size_t> pick;
  for (size_t c = 1; c <= maxBranch; ++c) {
    pick.assign(c, 0);
    while (true) {
      Shape s;
      for (size_t i = 0; i < c; ++i) s.kids.push_back(sub[pick[i]]);
      out.push_back(std::move(s));
      size_t i = 0;
      while (i < c && ++pick[i] == sub.size()) pick[i++] = 0;
      if (i == c) break;
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Shape& a, const Shape& b) {
                     return a.count() < b.count();
                   });
}

void addrsOf(const Shape& s, const NodeAddr& at, std::vector<NodeAddr>& out) {
  out.push_back(at);
  for (size_t i = 0; i < s.kids.size(); ++i) {
    NodeAddr child = at;
    child.push_back((int)i);
    addrsOf(s.kids[i], child, out);
  }
}

size_t ipow(size_t b, size_t e) {
  size_t r = 1;
  while (e--) {
    if (r > (size_t(1) << 40) / (b ? b : 1)) return size_t(1) << 40;
    r *= b;
  }
  return r;
}

}  // namespace

size_t countWords(const Signature& sig, const EnumCaps& caps) {
  size_t base = size_t(1) << sig.unary.size();
  size_t total = 0;
  for (size_t len = 1; len <= caps.maxLen; ++len) {
    total += ipow(base, len);
    if (total > (size_t(1) << 40)) return total;
  }
  return total;
}

size_t countTrees(const Signature& sig, const EnumCaps& caps) {
  std::vector<Shape> shapes;
  shapesUpToDepth(caps.maxDepth, caps.maxBranch, shapes);
  size_t base = size_t(1) << sig.unary.size();
  size_t total = 0;
  for (auto& s : shapes) {
    total += ipow(base, s.count());
    if (total > (size_t(1) << 40)) return total;
  }
  return total;
}

void enumerateWords(const Signature& sig, const EnumCaps& caps,
                    const std::function<bool(const WordModel&)>& fn) {
  if (countWords(sig, caps) > caps.guard)
    throw std::runtime_error("word enumeration exceeds guard");
  std::vector<LabelSet> lsets = allLabelSets(sig);
  for (size_t len = 1; len <= caps.maxLen; ++len) {
    std::vector<size_t> pick(len, 0);
    while (true) {
      WordModel w;
      for (size_t i = 0; i < len; ++i) w.positions.push_back(lsets[pick[i]]);
      if (!fn(w)) return;
      size_t i = 0;
      while (i < len && ++pick[i] == lsets.size()) pick[i++] = 0;
      if (i == len) break;
    }
  }
}

void enumerateTrees(const Signature& sig, const EnumCaps& caps,
                    const std::function<bool(const TreeModel&)>& fn) {
  if (countTrees(sig, caps) > caps.guard)
    throw std::runtime_error("tree enumeration exceeds guard");
  std::vector<Shape> shapes;
  shapesUpToDepth(caps.maxDepth, caps.maxBranch, shapes);
  std::vector<LabelSet> lsets = allLabelSets(sig);
  for (auto& s : shapes) {
    std::vector<NodeAddr> addrs;
    addrsOf(s, {}, addrs);
    size_t n = addrs.size();
    std::vector<size_t> pick(n, 0);
    while (true) {
      TreeModel t;
      t.nodes = addrs;
      for (size_t i = 0; i < n; ++i) t.labels.push_back(lsets[pick[i]]);
      if (!fn(t)) return;
      size_t i = 0;
      while (i < n && ++pick[i] == lsets.size()) pick[i++] = 0;
      if (i == n) break;
    }
  }
}

}  // namespace odfkit
