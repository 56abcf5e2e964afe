#include "odfkit/structures.hpp"

#include <algorithm>
#include <stdexcept>

namespace odfkit {

WordModel LassoWord::unroll(size_t copies) const {
  WordModel w;
  w.positions = prefix;
  for (size_t c = 0; c < copies; ++c)
    w.positions.insert(w.positions.end(), period.begin(), period.end());
  return w;
}

std::string addrToString(const NodeAddr& a) {
  if (a.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(a[i]);
  }
  return s;
}

int TreeModel::indexOf(const NodeAddr& a) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == a) return (int)i;
  return -1;
}

bool TreeModel::valid() const {
  if (nodes.empty() || !nodes[0].empty()) return false;
  if (nodes.size() != labels.size()) return false;
  for (auto& a : nodes) {
    if (!a.empty()) {
      NodeAddr parent(a.begin(), a.end() - 1);
      if (indexOf(parent) < 0) return false;
      if (a.back() > 0) {
        NodeAddr left = a;
        --left.back();
        if (indexOf(left) < 0) return false;
      }
    }
  }
  for (size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i - 1] < nodes[i])) return false;  // preorder = lexicographic
  return true;
}

const char* treePositionName(TreePosition p) {
  switch (p) {
    case TreePosition::A: return "A";
    case TreePosition::B: return "B";
    case TreePosition::L: return "L";
    case TreePosition::R: return "R";
  }
  return "?";
}

bool Structure::isAncestor(int a, int b) const {
  // a strict ancestor of b: addr[a] is a proper prefix of addr[b].
  const NodeAddr& x = addr[a];
  const NodeAddr& y = addr[b];
  if (x.size() >= y.size()) return false;
  return std::equal(x.begin(), x.end(), y.begin());
}

bool Structure::navHolds(Rel r, int a, int b) const {
  if (!relLegal(cls, r))
    throw std::runtime_error(std::string("relation ") + relName(r) +
                             " not interpreted in this structure class");
  switch (r) {
    case Rel::succh:
      if (cls == StructureClass::tree)
        return parent[a] == parent[b] && parent[a] != -1 &&
               sibIndex[b] == sibIndex[a] + 1;
      return b == a + 1;
    case Rel::lessh:
      if (cls == StructureClass::tree)
        return parent[a] == parent[b] && parent[a] != -1 &&
               sibIndex[a] < sibIndex[b];
      return a < b;
    case Rel::succv:
      return parent[b] == a;
    case Rel::lessv:
      return isAncestor(a, b);
    case Rel::sim:
      return classes[a] == classes[b];
    case Rel::succh2:
      return rank2[b] == rank2[a] + 1;
  }
  return false;
}

TreePosition Structure::positionOf(int a, int b) const {
  if (a == b) throw std::runtime_error("positionOf requires distinct nodes");
  if (isAncestor(a, b)) return TreePosition::B;
  // Left/right sibling subtree: b descends (weakly) from a sibling of a.
  if (parent[a] != -1) {
    const NodeAddr& pa = addr[a];
    const NodeAddr& ab = addr[b];
    if (ab.size() >= pa.size() &&
        std::equal(pa.begin(), pa.end() - 1, ab.begin())) {
      int sib = ab[pa.size() - 1];
      if (sib < pa.back()) return TreePosition::L;
      if (sib > pa.back()) return TreePosition::R;
      // sib == pa.back(): b is below a or equal; b below a handled above,
      // b == a excluded, so b is a strict ancestor? impossible here since
      // ab.size() >= pa.size() and equal prefix means b weakly below a.
    }
  }
  return TreePosition::A;
}

bool relLegal(StructureClass cls, Rel r) {
  switch (cls) {
    case StructureClass::word:
    case StructureClass::omega:
      return r == Rel::succh || r == Rel::lessh;
    case StructureClass::dataword:
      return r == Rel::succh || r == Rel::lessh || r == Rel::sim;
    case StructureClass::twoorder:
      return r == Rel::succh || r == Rel::lessh || r == Rel::succh2;
    case StructureClass::tree:
      return r == Rel::succh || r == Rel::lessh || r == Rel::succv ||
             r == Rel::lessv;
  }
  return false;
}

Structure flatten(const WordModel& w) {
  Structure s;
  s.cls = StructureClass::word;
  s.labels = w.positions;
  return s;
}

Structure flatten(const DataWordModel& w) {
  Structure s;
  s.cls = StructureClass::dataword;
  s.labels = w.word.positions;
  s.classes = w.classes;
  return s;
}

Structure flatten(const TwoOrderWord& w) {
  Structure s;
  s.cls = StructureClass::twoorder;
  s.labels = w.word.positions;
  s.rank2.assign(w.perm.size(), 0);
  for (size_t j = 0; j < w.perm.size(); ++j) s.rank2[w.perm[j]] = (int)j;
  return s;
}

Structure flatten(const TreeModel& t) {
  Structure s;
  s.cls = StructureClass::tree;
  s.labels = t.labels;
  s.addr = t.nodes;
  s.parent.assign(t.size(), -1);
  s.sibIndex.assign(t.size(), 0);
  s.depth.assign(t.size(), 0);
  for (size_t i = 0; i < t.size(); ++i) {
    const NodeAddr& a = t.nodes[i];
    s.depth[i] = (int)a.size();
    if (!a.empty()) {
      NodeAddr p(a.begin(), a.end() - 1);
      s.parent[i] = t.indexOf(p);
      s.sibIndex[i] = a.back();
    }
  }
  return s;
}

TreeModel toTreeModel(const Structure& s) {
  TreeModel t;
  t.nodes = s.addr;
  t.labels = s.labels;
  return t;
}

WordModel toWordModel(const Structure& s) {
  WordModel w;
  w.positions = s.labels;
  return w;
}

Structure flatten(const AnyStructure& s) {
  switch (s.cls) {
    case StructureClass::word: return flatten(s.word);
    case StructureClass::dataword: return flatten(s.dataword);
    case StructureClass::twoorder: return flatten(s.twoorder);
    case StructureClass::tree: return flatten(s.tree);
    case StructureClass::omega:
      throw std::runtime_error("omega structures are not finite");
  }
  throw std::runtime_error("bad structure class");
}

}  // namespace odfkit
