#include "odfkit/normalform.hpp"
#include "odfkit/syntax.hpp"

namespace odfkit {

const char* fragmentTagName(FragmentTag t) {
  switch (t) {
    case FragmentTag::ODF: return "ODF";
    case FragmentTag::FO2: return "FO2";
    case FragmentTag::C2: return "C2";
    case FragmentTag::GF2: return "GF2";
    case FragmentTag::UNFO: return "UNFO";
    case FragmentTag::NormalForm: return "NormalForm";
    case FragmentTag::DiagramNF: return "DiagramNF";
  }
  return "?";
}

namespace {

bool hasCounting(const FormulaPtr& f) {
  if (f->kind == FKind::CountGe || f->kind == FKind::CountLe) return true;
  for (auto& k : f->kids)
    if (hasCounting(k)) return true;
  return false;
}

bool isODF(const FormulaPtr& f) {
  if (f->kind == FKind::CountGe || f->kind == FKind::CountLe) return false;
  if ((f->kind == FKind::Exists || f->kind == FKind::Forall) &&
      freeVars(f).size() > 1)
    return false;
  for (auto& k : f->kids)
    if (!isODF(k)) return false;
  return true;
}

// Two-variable shape: single-variable quantifiers and at most two free
// variables in every subformula. Such a formula can be written with two names.
bool isTwoVariable(const FormulaPtr& f, bool allowCounting) {
  if (!allowCounting &&
      (f->kind == FKind::CountGe || f->kind == FKind::CountLe))
    return false;
  if ((f->kind == FKind::Exists || f->kind == FKind::Forall) &&
      f->vars.size() != 1)
    return false;
  if (freeVars(f).size() > 2) return false;
  for (auto& k : f->kids)
    if (!isTwoVariable(k, allowCounting)) return false;
  return true;
}

bool isAtom(const FormulaPtr& f) {
  return f->kind == FKind::UnaryAtom || f->kind == FKind::NavAtom ||
         f->kind == FKind::Eq;
}

bool atomCovers(const FormulaPtr& atom, const std::set<std::string>& vars) {
  std::set<std::string> av = freeVars(atom);
  for (auto& v : vars)
    if (!av.count(v)) return false;
  return true;
}

bool isGuarded(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Exists: {
      FormulaPtr body = f->kids[0];
      std::set<std::string> need = freeVars(body);
      if (need.size() <= 1) return isGuarded(body);
      if (body->kind == FKind::And && isAtom(body->kids[0]) &&
          atomCovers(body->kids[0], need))
        return isGuarded(body->kids[1]);
      if (isAtom(body) && atomCovers(body, need)) return true;
      return false;
    }
    case FKind::Forall: {
      FormulaPtr body = f->kids[0];
      std::set<std::string> need = freeVars(body);
      if (need.size() <= 1) return isGuarded(body);
      if (body->kind == FKind::Or && body->kids[0]->kind == FKind::Not &&
          isAtom(body->kids[0]->kids[0]) &&
          atomCovers(body->kids[0]->kids[0], need))
        return isGuarded(body->kids[1]);
      return false;
    }
    default:
      for (auto& k : f->kids)
        if (!isGuarded(k)) return false;
      return true;
  }
}

bool isUNFO(const FormulaPtr& f) {
  if (f->kind == FKind::Forall || f->kind == FKind::CountGe ||
      f->kind == FKind::CountLe)
    return false;
  if (f->kind == FKind::Not && freeVars(f->kids[0]).size() > 1) return false;
  for (auto& k : f->kids)
    if (!isUNFO(k)) return false;
  return true;
}

// Diagram normal form: every quantifier block's matrix (the body up to deeper
// blocks) is a disjunction of diagrams.
bool isDiagramNF(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Exists:
    case FKind::Forall: {
      if (!isDiagramDisjunction(f->kids[0], f->vars)) return false;
      // Relative atoms (inner blocks) must be in diagram form themselves.
      for (auto& k : f->kids) {
        if (!isDiagramNF(k)) return false;
      }
      return true;
    }
    default:
      for (auto& k : f->kids)
        if (!isDiagramNF(k)) return false;
      return true;
  }
}

}  // namespace

std::set<FragmentTag> classify(const FormulaPtr& f, const Signature&) {
  std::set<FragmentTag> tags;
  bool counting = hasCounting(f);
  if (!counting && isODF(f)) tags.insert(FragmentTag::ODF);
  if (isTwoVariable(f, /*allowCounting=*/true)) {
    tags.insert(FragmentTag::C2);
    if (!counting) {
      tags.insert(FragmentTag::FO2);
      if (isGuarded(f)) tags.insert(FragmentTag::GF2);
    }
  }
  if (!counting && isUNFO(f)) tags.insert(FragmentTag::UNFO);
  if (freeVars(f).empty() && parseNormalFormShape(f).has_value())
    tags.insert(FragmentTag::NormalForm);
  if (tags.count(FragmentTag::ODF) && isDiagramNF(f))
    tags.insert(FragmentTag::DiagramNF);
  return tags;
}

}  // namespace odfkit
