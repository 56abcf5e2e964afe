#pragma once

#include <vector>

#include "odfkit/structures.hpp"

namespace odfkit {

// Maximal consistent literal set over variables x1..xs: one polarity for
// every unary atom P(xi), every navigational atom r(xi,xj) of the signature,
// and every equality xi=xj. Stored as a packed bit vector with a fixed
// layout, so equality and ordering are cheap.
struct KType {
  unsigned arity = 0;
  std::vector<std::string> unaryNames;  // from the signature, in order
  std::vector<Rel> navRels;             // from the signature, in order
  std::vector<bool> bits;

  static KType blank(const Signature& sig, unsigned arity);

  bool unary(size_t pred, unsigned i) const { return bits[uIdx(pred, i)]; }
  bool nav(size_t rel, unsigned i, unsigned j) const {
    return bits[rIdx(rel, i, j)];
  }
  bool eq(unsigned i, unsigned j) const;  // reflexive, symmetric

  void setUnary(size_t pred, unsigned i, bool v) { bits[uIdx(pred, i)] = v; }
  void setNav(size_t rel, unsigned i, unsigned j, bool v) {
    bits[rIdx(rel, i, j)] = v;
  }
  void setEq(unsigned i, unsigned j, bool v);

  // All variables equal to x1 (realized only by single elements).
  bool trivial() const;

  // The 1-type of variable i (as an arity-1 type).
  KType oneTypeOf(unsigned i) const;

  // perm[i] = source variable of target slot i; perm[0] need not be 0.
  KType permuted(const std::vector<unsigned>& perm) const;

  // Type of the tuple with x1 duplicated `extra` more times right after x1.
  KType withDuplicatedFirst(unsigned extra) const;

  // Sorted human-readable literals: "P(x1)", "!lessh(x1,x2)", "eq(x2,x3)", ...
  std::vector<std::string> literalStrings() const;

  bool operator==(const KType& o) const {
    return arity == o.arity && bits == o.bits;
  }
  bool operator<(const KType& o) const {
    if (arity != o.arity) return arity < o.arity;
    return bits < o.bits;
  }

  size_t uIdx(size_t pred, unsigned i) const;
  size_t rIdx(size_t rel, unsigned i, unsigned j) const;
  size_t eIdx(unsigned i, unsigned j) const;  // i < j
};

// The unique type realized by the tuple (indices into s); arity = |tuple|.
KType typeOf(const Structure& s, const std::vector<int>& tuple,
             const Signature& sig);

// Evaluate a quantifier-free matrix propositionally on a type; vars[i] is the
// variable bound to slot i.
bool evalOnType(const FormulaPtr& matrix, const KType& t,
                const std::vector<std::string>& vars);

// Constructive realizability in the class: search for a structure with at
// most 2*max(arity,k) elements realizing the type.
bool realizableInClass(const KType& t, StructureClass cls, unsigned k);

}  // namespace odfkit
