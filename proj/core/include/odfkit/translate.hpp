#pragma once

#include "odfkit/formula.hpp"

namespace odfkit {

// Modal formula to a one-free-variable guarded two-variable formula; the free
// variable is `freeVar`. Node-wise equivalent under evalModal/evalFO.
FormulaPtr standardTranslation(const ModalPtr& m, const std::string& freeVar = "x");

// Expand counting quantifiers: E>=n y.f becomes an n-variable block with
// pairwise distinctness, E<=n its negation. Output is ODF for any
// single-variable-quantifier input; equivalence is class-independent.
FormulaPtr c2ToOdf(const FormulaPtr& f);

// Rewrite a word-signature ODF formula so that negation occurs only on
// subformulas with at most one free variable: negations are pushed inward,
// universal blocks become negated existential blocks, and negated binary
// atoms are replaced by positive descriptions of their complement. The output
// is UNFO (and may use lessh even if the input did not).
FormulaPtr odfToUnfoWord(const FormulaPtr& f, const Signature& sig);

// Same over ordered unranked trees: negated vertical/horizontal atoms are
// replaced by case splits over the relative placement of the two nodes.
FormulaPtr odfToUnfoXmlTree(const FormulaPtr& f, const Signature& sig);

// Word ordering scheme: a linear arrangement of the block variables. order is
// a permutation of 0..k (variable indices, 0 = the free variable); step[j]
// relates chain element j to element j+1.
enum class OrderStep : uint8_t { equal, successor, afterGap };

struct OrderingScheme {
  std::vector<int> order;
  std::vector<OrderStep> steps;  // size order.size()-1
};

// All schemes over k+1 variables, deduplicated up to renaming of equated
// variables (indices inside an equality run are increasing).
std::vector<OrderingScheme> enumerateOrderingSchemes(unsigned k);

// ODF over a word signature to a two-variable formula, by quantifier-block
// induction: disjunctive normal form of the matrix, a disjunction over
// ordering schemes, and a chain of single-variable quantifiers walking the
// scheme leftward and rightward from the free variable. Exponentially larger
// in general. Throws if a block exceeds maxWidth variables.
FormulaPtr odfToFo2Word(const FormulaPtr& f, const Signature& sig,
                        unsigned maxWidth = 4);

// Guarded two-variable formula over {succv,lessv} to UNFO: universal blocks
// become negated existentials, descendant guards split into the child case
// and the two-step case, and negated binary literals inside a guarded block
// collapse to constants determined by the guard.
FormulaPtr gf2ToUnfoUnordered(const FormulaPtr& f, const Signature& sig);

// Tree ordering scheme over {succv,lessv}: equality classes of variables
// arranged in a forest; an edge is either a child edge (succv, hence also
// lessv) or a proper-descendant edge (lessv only, some node in between is
// allowed). Atoms not implied by the forest are false.
struct TreeSchemeClass {
  std::vector<int> members;  // variable indices, increasing
  int parent = -1;           // class index, -1 for a component root
  bool childEdge = false;    // succv edge to the parent when true
};

struct TreeOrderingScheme {
  std::vector<TreeSchemeClass> classes;
};

std::vector<TreeOrderingScheme> enumerateTreeOrderingSchemes(unsigned k);

// The traversal emitting a modal formula for one scheme: starting at the
// focus class, descend into its subtree, walk up through its ancestors
// visiting sibling branches, then reach every other component through the
// up+/down+ jump. bundles[c] is the label/relative-atom payload of class c.
ModalPtr treeSchemeTraversal(const TreeOrderingScheme& scheme, int focusClass,
                             const std::vector<ModalPtr>& bundles);

// UNFO one-dimensional formula over {succv,lessv} with at most one free
// variable to a CoreXPath formula over {down,up,down+,up+}, agreeing with the
// input at every node. Throws on two or more free variables or on blocks
// wider than maxWidth.
ModalPtr unfoToCoreXPathUnordered(const FormulaPtr& f, const Signature& sig,
                                  unsigned maxWidth = 4);

// ODF over {succv,lessv} (sentence or one free variable) to a two-variable
// formula with counting: diagram normal form, then per-diagram translation
// walking from the free variable's image up through its ancestors, placing
// sibling subtrees and unrelated components through counting over
// collections. Throws if a diagram exceeds maxWidth variables.
FormulaPtr odfToC2Unordered(const FormulaPtr& f, const Signature& sig,
                            unsigned maxWidth = 4);

}  // namespace odfkit
