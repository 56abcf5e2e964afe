#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "odfkit/ktype.hpp"

namespace odfkit {

size_t KType::uIdx(size_t pred, unsigned i) const {
  return pred * arity + i;
}

size_t KType::rIdx(size_t rel, unsigned i, unsigned j) const {
  return unaryNames.size() * arity + (rel * arity + i) * arity + j;
}

size_t KType::eIdx(unsigned i, unsigned j) const {
  // index of pair (i,j), i<j, in lexicographic order
  size_t base = unaryNames.size() * arity + navRels.size() * arity * arity;
  return base + (size_t)i * arity - (size_t)i * (i + 1) / 2 + (j - i - 1);
}

KType KType::blank(const Signature& sig, unsigned arity) {
  if (arity == 0) throw std::runtime_error("empty tuple has no type");
  KType t;
  t.arity = arity;
  t.unaryNames = sig.unary;
  t.navRels.assign(sig.nav.begin(), sig.nav.end());
  t.bits.assign(t.unaryNames.size() * arity +
                    t.navRels.size() * arity * arity +
                    (size_t)arity * (arity - 1) / 2,
                false);
  return t;
}

bool KType::eq(unsigned i, unsigned j) const {
  if (i == j) return true;
  if (i > j) std::swap(i, j);
  return bits[eIdx(i, j)];
}

void KType::setEq(unsigned i, unsigned j, bool v) {
  if (i == j) {
    if (!v) throw std::runtime_error("xi = xi cannot be false");
    return;
  }
  if (i > j) std::swap(i, j);
  bits[eIdx(i, j)] = v;
}

bool KType::trivial() const {
  for (unsigned j = 1; j < arity; ++j)
    if (!eq(0, j)) return false;
  return true;
}

KType KType::oneTypeOf(unsigned i) const {
  Signature sig;
  sig.unary = unaryNames;
  sig.nav.insert(navRels.begin(), navRels.end());
  KType t = blank(sig, 1);
  for (size_t p = 0; p < unaryNames.size(); ++p)
    t.setUnary(p, 0, unary(p, i));
  for (size_t r = 0; r < navRels.size(); ++r)
    t.setNav(r, 0, 0, nav(r, i, i));
  return t;
}

KType KType::permuted(const std::vector<unsigned>& perm) const {
  if (perm.size() != arity) throw std::runtime_error("bad permutation size");
  KType t = *this;
  for (size_t p = 0; p < unaryNames.size(); ++p)
    for (unsigned i = 0; i < arity; ++i)
      t.setUnary(p, i, unary(p, perm[i]));
  for (size_t r = 0; r < navRels.size(); ++r)
    for (unsigned i = 0; i < arity; ++i)
      for (unsigned j = 0; j < arity; ++j)
        t.setNav(r, i, j, nav(r, perm[i], perm[j]));
  for (unsigned i = 0; i < arity; ++i)
    for (unsigned j = i + 1; j < arity; ++j)
      t.setEq(i, j, eq(perm[i], perm[j]));
  return t;
}

KType KType::withDuplicatedFirst(unsigned extra) const {
  if (extra == 0) return *this;
  Signature sig;
  sig.unary = unaryNames;
  sig.nav.insert(navRels.begin(), navRels.end());
  KType t = blank(sig, arity + extra);
  // source slot of target slot i: first 1+extra slots are copies of x1
  auto src = [&](unsigned i) { return i <= extra ? 0u : i - extra; };
  for (size_t p = 0; p < unaryNames.size(); ++p)
    for (unsigned i = 0; i < t.arity; ++i)
      t.setUnary(p, i, unary(p, src(i)));
  for (size_t r = 0; r < navRels.size(); ++r)
    for (unsigned i = 0; i < t.arity; ++i)
      for (unsigned j = 0; j < t.arity; ++j)
        t.setNav(r, i, j, nav(r, src(i), src(j)));
  for (unsigned i = 0; i < t.arity; ++i)
    for (unsigned j = i + 1; j < t.arity; ++j)
      t.setEq(i, j, eq(src(i), src(j)));
  return t;
}

std::vector<std::string> KType::literalStrings() const {
  std::vector<std::string> out;
  auto var = [](unsigned i) { return "x" + std::to_string(i + 1); };
  for (size_t p = 0; p < unaryNames.size(); ++p)
    for (unsigned i = 0; i < arity; ++i)
      out.push_back((unary(p, i) ? "" : "!") + unaryNames[p] + "(" + var(i) +
                    ")");
  for (size_t r = 0; r < navRels.size(); ++r)
    for (unsigned i = 0; i < arity; ++i)
      for (unsigned j = 0; j < arity; ++j) {
        if (i == j) continue;
        out.push_back(std::string(nav(r, i, j) ? "" : "!") +
                      relName(navRels[r]) + "(" + var(i) + "," + var(j) + ")");
      }
  for (unsigned i = 0; i < arity; ++i)
    for (unsigned j = i + 1; j < arity; ++j)
      out.push_back(std::string(eq(i, j) ? "" : "!") + "eq(" + var(i) + "," +
                    var(j) + ")");
  std::sort(out.begin(), out.end());
  return out;
}

KType typeOf(const Structure& s, const std::vector<int>& tuple,
             const Signature& sig) {
  if (tuple.empty()) throw std::runtime_error("empty tuple has no type");
  KType t = KType::blank(sig, (unsigned)tuple.size());
  for (size_t p = 0; p < t.unaryNames.size(); ++p)
    for (unsigned i = 0; i < t.arity; ++i)
      t.setUnary(p, i, s.hasLabel(tuple[i], t.unaryNames[p]));
  for (size_t r = 0; r < t.navRels.size(); ++r)
    for (unsigned i = 0; i < t.arity; ++i)
      for (unsigned j = 0; j < t.arity; ++j)
        t.setNav(r, i, j, s.navHolds(t.navRels[r], tuple[i], tuple[j]));
  for (unsigned i = 0; i < t.arity; ++i)
    for (unsigned j = i + 1; j < t.arity; ++j)
      t.setEq(i, j, tuple[i] == tuple[j]);
  return t;
}

bool evalOnType(const FormulaPtr& matrix, const KType& t,
                const std::vector<std::string>& vars) {
  auto slot = [&](const std::string& v) -> unsigned {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return (unsigned)i;
    throw std::runtime_error("unbound variable in matrix: " + v);
  };
  switch (matrix->kind) {
    case FKind::True:
      return true;
    case FKind::False:
      return false;
    case FKind::UnaryAtom: {
      for (size_t p = 0; p < t.unaryNames.size(); ++p)
        if (t.unaryNames[p] == matrix->pred)
          return t.unary(p, slot(matrix->v1));
      throw std::runtime_error("predicate not in type signature: " +
                               matrix->pred);
    }
    case FKind::NavAtom: {
      for (size_t r = 0; r < t.navRels.size(); ++r)
        if (t.navRels[r] == matrix->rel)
          return t.nav(r, slot(matrix->v1), slot(matrix->v2));
      throw std::runtime_error("relation not in type signature");
    }
    case FKind::Eq:
      return t.eq(slot(matrix->v1), slot(matrix->v2));
    case FKind::Not:
      return !evalOnType(matrix->kids[0], t, vars);
    case FKind::And:
      return evalOnType(matrix->kids[0], t, vars) &&
             evalOnType(matrix->kids[1], t, vars);
    case FKind::Or:
      return evalOnType(matrix->kids[0], t, vars) ||
             evalOnType(matrix->kids[1], t, vars);
    default:
      throw std::runtime_error("matrix is not quantifier-free");
  }
}

namespace {

bool tupleMatches(const Structure& s, const std::vector<int>& tuple,
                  const KType& t, const Signature& sig) {
  return typeOf(s, tuple, sig) == t;
}

// All tuples of the given arity over 0..n-1, first element free too.
bool anyTuple(const Structure& s, const KType& t, const Signature& sig) {
  size_t n = s.size();
  std::vector<int> tuple(t.arity, 0);
  while (true) {
    if (tupleMatches(s, tuple, t, sig)) return true;
    size_t i = 0;
    for (; i < tuple.size(); ++i) {
      if (++tuple[i] < (int)n) break;
      tuple[i] = 0;
    }
    if (i == tuple.size()) return false;
  }
}

}  // namespace

bool realizableInClass(const KType& t, StructureClass cls, unsigned k) {
  Signature sig;
  sig.unary = t.unaryNames;
  sig.nav.insert(t.navRels.begin(), t.navRels.end());
  for (Rel r : sig.nav)
    if (!relLegal(cls == StructureClass::omega ? StructureClass::word : cls,
                  r))
      return false;

  size_t n = 2 * std::max(t.arity, k);
  EnumCaps caps;
  caps.guard = (size_t)-1;
  bool found = false;
  switch (cls) {
    case StructureClass::word:
    case StructureClass::omega:
      // Finite and ultimately periodic words realize the same types.
      caps.maxLen = n;
      enumerateWords(sig, caps, [&](const WordModel& w) {
        if (anyTuple(flatten(w), t, sig)) found = true;
        return !found;
      });
      return found;
    case StructureClass::tree:
      caps.maxDepth = n - 1;
      caps.maxBranch = n - 1;
      enumerateTrees(sig, caps, [&](const TreeModel& tr) {
        if (tr.size() > n) return false;  // shapes come smallest first
        if (anyTuple(flatten(tr), t, sig)) found = true;
        return !found;
      });
      return found;
    case StructureClass::dataword: {
      caps.maxLen = n;
      enumerateWords(sig, caps, [&](const WordModel& w) {
        // all class assignments of the positions
        size_t len = w.size();
        std::vector<int> cls_(len, 0);
        while (true) {
          DataWordModel d{w, cls_};
          if (anyTuple(flatten(d), t, sig)) {
            found = true;
            return false;
          }
          size_t i = 0;
          for (; i < len; ++i) {
            if (++cls_[i] < (int)len) break;
            cls_[i] = 0;
          }
          if (i == len) break;
        }
        return !found;
      });
      return found;
    }
    case StructureClass::twoorder: {
      caps.maxLen = n;
      enumerateWords(sig, caps, [&](const WordModel& w) {
        std::vector<int> perm(w.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          TwoOrderWord two{w, perm};
          if (anyTuple(flatten(two), t, sig)) {
            found = true;
            return false;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return !found;
      });
      return found;
    }
  }
  return false;
}

}  // namespace odfkit
