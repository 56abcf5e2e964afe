#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace odfkit {

// Navigational relations with fixed interpretations. succh/lessh are word
// successor/order (on trees: next-sibling/following-sibling), succv/lessv are
// child/descendant, sim is the data-word equivalence, succh2 the second-order
// successor of two-order words.
enum class Rel : uint8_t { succh, lessh, succv, lessv, sim, succh2 };

const char* relName(Rel r);
bool relFromName(const std::string& s, Rel& out);

struct Signature {
  std::vector<std::string> unary;  // ordered; names unique and non-empty
  std::set<Rel> nav;

  bool hasUnary(const std::string& p) const;
  int unaryIndex(const std::string& p) const;  // -1 if absent
  bool hasNav(Rel r) const { return nav.count(r) != 0; }
  Signature withUnary(const std::vector<std::string>& extra) const;
};

enum class FKind : uint8_t {
  True,
  False,
  UnaryAtom,  // pred(v1)
  NavAtom,    // rel(v1,v2)
  Eq,         // eq(v1,v2)
  Not,
  And,
  Or,
  Exists,   // block: vars, one child
  Forall,   // block: vars, one child
  CountGe,  // E>=threshold v1. child
  CountLe,  // E<=threshold v1. child
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind = FKind::True;
  std::string pred;              // UnaryAtom
  Rel rel = Rel::succh;          // NavAtom
  std::string v1, v2;            // atom variables; v1 also the counting variable
  std::vector<std::string> vars; // quantifier block variables (nonempty)
  unsigned threshold = 0;        // counting
  std::vector<FormulaPtr> kids;  // Not:1, And/Or:2, blocks:1
};

// Constructors.
FormulaPtr fTrue();
FormulaPtr fFalse();
FormulaPtr fAtom(const std::string& pred, const std::string& v);
FormulaPtr fNav(Rel r, const std::string& a, const std::string& b);
FormulaPtr fEq(const std::string& a, const std::string& b);
FormulaPtr fNot(FormulaPtr f);
FormulaPtr fAnd(FormulaPtr a, FormulaPtr b);
FormulaPtr fOr(FormulaPtr a, FormulaPtr b);
FormulaPtr fExists(std::vector<std::string> vars, FormulaPtr body);
FormulaPtr fForall(std::vector<std::string> vars, FormulaPtr body);
FormulaPtr fCountGe(unsigned n, const std::string& v, FormulaPtr body);
FormulaPtr fCountLe(unsigned n, const std::string& v, FormulaPtr body);

// Right-nested conjunction/disjunction of a nonempty list (empty -> true/false).
FormulaPtr fConj(const std::vector<FormulaPtr>& fs);
FormulaPtr fDisj(const std::vector<FormulaPtr>& fs);

// Flatten nested And/Or nodes of the same kind into a list.
std::vector<FormulaPtr> conjuncts(FormulaPtr f);
std::vector<FormulaPtr> disjuncts(FormulaPtr f);

std::set<std::string> freeVars(const FormulaPtr& f);
// Maximum number of free variables over all subformulas.
unsigned width(const FormulaPtr& f);

bool astEqual(const FormulaPtr& a, const FormulaPtr& b);
// Equality modulo renaming of bound variables.
bool alphaEqual(const FormulaPtr& a, const FormulaPtr& b);

// Capture-safe substitution of a free variable by another variable.
FormulaPtr renameFree(const FormulaPtr& f, const std::string& from, const std::string& to);

// Rename every bound variable to a fresh name drawn from the counter; ensures
// no variable is bound twice on any path and bound names avoid `taken`.
FormulaPtr freshenBound(const FormulaPtr& f, unsigned& counter, std::set<std::string>& taken);

// Negation normal form: negation pushed down to atoms; counting quantifiers
// dualized (not E>=n -> E<=n-1). Preserves the free-variable set.
FormulaPtr pushNegationsInward(const FormulaPtr& f);

size_t formulaSize(const FormulaPtr& f);

bool quantifierFree(const FormulaPtr& f);

// Modal AST (CoreXPath over trees; over words only the horizontal directions
// apply, read as next/previous/future/past).
enum class Dir : uint8_t { down, up, downPlus, upPlus, right, left, rightPlus, leftPlus };

const char* dirName(Dir d);

enum class MKind : uint8_t { Prop, True, False, Not, And, Or, Diamond, Box };

struct ModalFormula;
using ModalPtr = std::shared_ptr<const ModalFormula>;

struct ModalFormula {
  MKind kind = MKind::True;
  std::string prop;
  Dir dir = Dir::down;
  std::vector<ModalPtr> kids;
};

ModalPtr mProp(const std::string& p);
ModalPtr mTrue();
ModalPtr mFalse();
ModalPtr mNot(ModalPtr f);
ModalPtr mAnd(ModalPtr a, ModalPtr b);
ModalPtr mOr(ModalPtr a, ModalPtr b);
ModalPtr mDiamond(Dir d, ModalPtr f);
ModalPtr mBox(Dir d, ModalPtr f);
ModalPtr mConj(const std::vector<ModalPtr>& fs);
ModalPtr mDisj(const std::vector<ModalPtr>& fs);

bool modalEqual(const ModalPtr& a, const ModalPtr& b);
size_t modalSize(const ModalPtr& f);

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(const std::string& msg, size_t off)
      : std::runtime_error(msg), offset(off) {}
};

}  // namespace odfkit
