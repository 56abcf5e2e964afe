#pragma once

#include <stdexcept>
#include <vector>

#include "odfkit/formula.hpp"

namespace odfkit {
namespace translate_detail {

inline bool isAtomNode(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::UnaryAtom:
    case FKind::NavAtom:
    case FKind::Eq:
    case FKind::Exists:
    case FKind::Forall:
    case FKind::CountGe:
    case FKind::CountLe:
      return true;
    default:
      return false;
  }
}

// Distinct atoms (atomic formulas and quantifier blocks) of a matrix.
inline void collectAtoms(const FormulaPtr& f, std::vector<FormulaPtr>& atoms) {
  if (isAtomNode(f)) {
    for (auto& a : atoms)
      if (astEqual(a, f)) return;
    atoms.push_back(f);
    return;
  }
  for (auto& k : f->kids) collectAtoms(k, atoms);
}

inline bool evalSkeleton(const FormulaPtr& f,
                         const std::vector<FormulaPtr>& atoms,
                         const std::vector<bool>& val) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Not: return !evalSkeleton(f->kids[0], atoms, val);
    case FKind::And:
      return evalSkeleton(f->kids[0], atoms, val) &&
             evalSkeleton(f->kids[1], atoms, val);
    case FKind::Or:
      return evalSkeleton(f->kids[0], atoms, val) ||
             evalSkeleton(f->kids[1], atoms, val);
    default:
      for (size_t i = 0; i < atoms.size(); ++i)
        if (astEqual(atoms[i], f)) return val[i];
      throw std::logic_error("matrix atom not collected");
  }
}

// Full disjunctive normal form of a matrix as truth assignments to its atoms.
inline std::vector<std::vector<bool>> matrixAssignments(
    const FormulaPtr& matrix, const std::vector<FormulaPtr>& atoms,
    size_t atomCap = 16) {
  if (atoms.size() > atomCap)
    throw std::runtime_error("matrix has too many distinct atoms to translate");
  std::vector<std::vector<bool>> out;
  for (size_t mask = 0; mask < (size_t(1) << atoms.size()); ++mask) {
    std::vector<bool> val(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) val[i] = (mask >> i) & 1;
    if (evalSkeleton(matrix, atoms, val)) out.push_back(std::move(val));
  }
  return out;
}

}  // namespace translate_detail
}  // namespace odfkit
