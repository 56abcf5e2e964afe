#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "odfkit/formula.hpp"
#include "odfkit/structures.hpp"

namespace odfkit {

// One conjunct of the normal form: either
//   forall y0 exists y1..yk  matrix     (forallExists, vars = {y0,y1..yk})
//   forall x1..xl            matrix     (universal, vars = {x1..xl})
// with a quantifier-free matrix.
struct NFConjunct {
  bool forallExists = false;
  std::vector<std::string> vars;
  FormulaPtr matrix;
};

struct NFShape {
  std::vector<NFConjunct> conjuncts;
  unsigned widthValue = 0;  // max over {k_i+1} and {l_j}
};

// Recognize a formula of the normal-form shape; nullopt if not shaped so.
std::optional<NFShape> parseNormalFormShape(const FormulaPtr& f);

struct NormalFormResult {
  FormulaPtr formula;  // conjunction in normal-form shape
  NFShape shape;
  std::map<std::string, FormulaPtr> freshPredicates;  // name -> replaced block
  unsigned widthValue = 0;
  Signature extendedSig;  // input signature plus the fresh unary predicates
};

// Scott-style normal form: satisfiability-equivalent rewriting that replaces
// inner quantifier blocks by fresh unary predicates "NF1", "NF2", ...
// Every model of the input expands to a model of the output; every model of
// the output restricted to the input signature satisfies the input.
// Requires a closed ODF formula.
NormalFormResult toNormalForm(const FormulaPtr& f, const Signature& sig);

// Canonical expansion: label each element of a base-signature structure with
// the fresh predicates of `nf`, interpreting NFi at an element as the truth of
// the block it replaced there. The expanded structure satisfies nf.formula
// exactly when the base structure satisfies the original formula.
Structure expandCanonical(const Structure& base, const NormalFormResult& nf);

// True if `matrix` (over the block variables plus at most one outer free
// variable) is a disjunction of complete diagrams: each disjunct fixes one
// polarity for every atom of the matrix's vocabulary and an equality or
// distinctness for every variable pair. One-free-variable quantified
// subformulas count as unary atoms of the vocabulary.
bool isDiagramDisjunction(const FormulaPtr& matrix,
                          const std::vector<std::string>& vars);

// Equivalent formula in which the matrix of every quantified block is a
// disjunction of diagrams over the vocabulary occurring in it.
FormulaPtr toDiagramNormalForm(const FormulaPtr& f, const Signature& sig);

// As above, but the listed relations join every matrix vocabulary even when
// absent from the matrix, so each diagram fixes their full configuration.
FormulaPtr toDiagramNormalForm(const FormulaPtr& f, const Signature& sig,
                               const std::vector<Rel>& forceRels);

// Over tree signatures containing lessv: additionally make every diagram
// contain a root variable z with "no parent", disjoining over all placements
// of z (an existing variable or a freshly added one), and drop diagrams whose
// positive succv/lessv literals do not connect all variables to the root.
FormulaPtr toRootedDiagramForm(const FormulaPtr& f, const Signature& sig);

}  // namespace odfkit
