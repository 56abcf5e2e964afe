#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "odfkit/formula.hpp"

namespace odfkit {

using LabelSet = std::set<std::string>;

struct WordModel {
  std::vector<LabelSet> positions;  // length >= 1

  size_t size() const { return positions.size(); }
};

struct LassoWord {
  std::vector<LabelSet> prefix;
  std::vector<LabelSet> period;  // nonempty

  // Label of position i of the represented infinite word.
  const LabelSet& at(size_t i) const {
    return i < prefix.size() ? prefix[i]
                             : period[(i - prefix.size()) % period.size()];
  }
  // Finite unrolling with `copies` period copies.
  WordModel unroll(size_t copies) const;
};

struct DataWordModel {
  WordModel word;
  std::vector<int> classes;  // classes[i] = class id of position i
};

struct TwoOrderWord {
  WordModel word;             // order 1 is position order
  std::vector<int> perm;      // perm[j] = position at rank j of order 2
};

using NodeAddr = std::vector<int>;

std::string addrToString(const NodeAddr& a);

struct TreeModel {
  // Nodes in depth-first preorder; addr[0] is the root (empty address).
  std::vector<NodeAddr> nodes;
  std::vector<LabelSet> labels;  // parallel to nodes

  size_t size() const { return nodes.size(); }
  int indexOf(const NodeAddr& a) const;  // -1 if absent
  // Validity: prefix-closed, left-sibling-closed, preorder sorted.
  bool valid() const;
};

enum class TreePosition { A, B, L, R };

const char* treePositionName(TreePosition p);

enum class StructureClass { word, omega, dataword, twoorder, tree };

// Uniform finite structure view: elements are indices 0..size-1.
// For trees the element order is depth-first preorder.
struct Structure {
  StructureClass cls = StructureClass::word;
  std::vector<LabelSet> labels;
  // tree only:
  std::vector<int> parent;    // -1 for root
  std::vector<int> sibIndex;  // index among siblings
  std::vector<int> depth;
  std::vector<NodeAddr> addr;
  // dataword only:
  std::vector<int> classes;
  // twoorder only:
  std::vector<int> rank2;  // rank2[i] = rank of position i in order 2

  size_t size() const { return labels.size(); }
  bool hasLabel(int elem, const std::string& p) const {
    return labels[elem].count(p) != 0;
  }
  bool navHolds(Rel r, int a, int b) const;
  bool isAncestor(int a, int b) const;  // strict, tree only
  TreePosition positionOf(int a, int b) const;  // tree only, a != b
};

Structure flatten(const WordModel& w);
Structure flatten(const DataWordModel& w);
Structure flatten(const TwoOrderWord& w);
Structure flatten(const TreeModel& t);
TreeModel toTreeModel(const Structure& s);
WordModel toWordModel(const Structure& s);

// Legal relations for a structure class.
bool relLegal(StructureClass cls, Rel r);

struct EnumCaps {
  size_t maxLen = 0;     // words
  size_t maxDepth = 0;   // trees: root has depth 0
  size_t maxBranch = 0;  // trees
  // Refuse enumerations beyond this many structures.
  size_t guard = size_t(1) << 24;
};

// Calls fn for every word over sig.unary with 1 <= length <= caps.maxLen,
// in order of length then lexicographic labels. fn returning false stops.
void enumerateWords(const Signature& sig, const EnumCaps& caps,
                    const std::function<bool(const WordModel&)>& fn);

// Calls fn for every tree over sig.unary with depth <= maxDepth and branching
// <= maxBranch, smaller node counts first within a shape order.
void enumerateTrees(const Signature& sig, const EnumCaps& caps,
                    const std::function<bool(const TreeModel&)>& fn);

size_t countWords(const Signature& sig, const EnumCaps& caps);
size_t countTrees(const Signature& sig, const EnumCaps& caps);

// JSON serialization (formats documented in README).
std::string serializeWord(const WordModel& w);
std::string serializeLasso(const LassoWord& w);
std::string serializeDataWord(const DataWordModel& w);
std::string serializeTwoOrder(const TwoOrderWord& w);
std::string serializeTree(const TreeModel& t);

struct AnyStructure {
  StructureClass cls;
  WordModel word;
  LassoWord lasso;
  DataWordModel dataword;
  TwoOrderWord twoorder;
  TreeModel tree;
};

AnyStructure deserializeStructure(const std::string& json);
std::string serializeStructure(const AnyStructure& s);
Structure flatten(const AnyStructure& s);  // not for omega

}  // namespace odfkit
