#pragma once

#include <set>
#include <string>

#include "odfkit/formula.hpp"

namespace odfkit {

// Concrete syntax:
//   formula := atom | "!" formula | "(" formula op formula ")"
//            | ("E"|"A") var+ "." formula | ("E>="|"E<=") NAT var "." formula
//   op      := "&" | "|" | "->" | "<->"
//   atom    := NAME "(" var ")" | REL "(" var "," var ")" | "eq(" var "," var ")"
//            | "true" | "false"
// "#" starts a comment running to end of line. "->" and "<->" are desugared at
// parse time; bound variables are renamed so nothing is shadowed.
FormulaPtr parseFormula(const std::string& text, const Signature& sig);

std::string printFormula(const FormulaPtr& f);

// Modal concrete syntax: props, "!", "(f & g)", "(f | g)", "<down>f", "[up+]f".
ModalPtr parseModal(const std::string& text, const Signature& sig);
std::string printModal(const ModalPtr& f);

enum class FragmentTag { ODF, FO2, C2, GF2, UNFO, NormalForm, DiagramNF };

const char* fragmentTagName(FragmentTag t);

// Decidable syntactic fragment membership:
//  - ODF: no counting; every quantifier block leaves at most one free variable.
//  - FO2: single-variable quantifiers, every subformula has at most two free
//    variables, no counting (such formulas can be written with two names).
//  - C2: as FO2 but counting quantifiers allowed.
//  - GF2: FO2 and every quantifier is relativised by an atomic guard
//    containing all free variables of its body.
//  - UNFO: no universal blocks; negation only on subformulas with at most one
//    free variable; no counting.
//  - NormalForm: conjunction of forall-exists blocks and forall blocks with
//    quantifier-free matrices.
//  - DiagramNF: NormalForm-like blocks whose matrices are disjunctions of
//    complete diagrams.
std::set<FragmentTag> classify(const FormulaPtr& f, const Signature& sig);

}  // namespace odfkit
