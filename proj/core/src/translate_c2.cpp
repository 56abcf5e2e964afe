#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "odfkit/normalform.hpp"
#include "odfkit/syntax.hpp"
#include "odfkit/translate.hpp"

namespace odfkit {

namespace {

FormulaPtr expandCounting(const FormulaPtr& f, unsigned& counter) {
  switch (f->kind) {
    case FKind::CountGe: {
      FormulaPtr body = expandCounting(f->kids[0], counter);
      if (f->threshold == 0) return fTrue();
      unsigned id = ++counter;
      std::vector<std::string> names;
      for (unsigned i = 0; i < f->threshold; ++i)
        names.push_back(f->v1 + "_q" + std::to_string(id) + "_" +
                        std::to_string(i));
      std::vector<FormulaPtr> lits;
      for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j)
          lits.push_back(fNot(fEq(names[i], names[j])));
      for (auto& n : names) lits.push_back(renameFree(body, f->v1, n));
      return fExists(names, fConj(lits));
    }
    case FKind::CountLe: {
      FormulaPtr ge =
          expandCounting(fCountGe(f->threshold + 1, f->v1, f->kids[0]), counter);
      return fNot(ge);
    }
    case FKind::Not:
      return fNot(expandCounting(f->kids[0], counter));
    case FKind::And:
      return fAnd(expandCounting(f->kids[0], counter),
                  expandCounting(f->kids[1], counter));
    case FKind::Or:
      return fOr(expandCounting(f->kids[0], counter),
                 expandCounting(f->kids[1], counter));
    case FKind::Exists:
      return fExists(f->vars, expandCounting(f->kids[0], counter));
    case FKind::Forall:
      return fForall(f->vars, expandCounting(f->kids[0], counter));
    default:
      return f;
  }
}

}  // namespace

FormulaPtr c2ToOdf(const FormulaPtr& f) {
  unsigned counter = 0;
  std::set<std::string> taken = freeVars(f);
  FormulaPtr g = freshenBound(f, counter, taken);
  return expandCounting(g, counter);
}

namespace {

// ----- ODF over {succv, lessv} to two-variable counting logic -----
//
// Pipeline: universal blocks become negated existentials, the matrix of every
// block becomes a disjunction of diagrams with the full succv/lessv
// configuration pinned, and each consistent diagram is compiled into a
// formula with one free variable: starting from the free variable's image the
// formula walks up through its diagram ancestors; at every station the
// sibling subtrees demanded by the diagram are placed at distinct children
// via counting over collections (full and/or-not types over the slot
// formulas), with the count of the type realised by the child we arrived from
// raised by one so that witnesses avoid the branch we came up from.
// Unrelated diagram components hang off distinct ancestors of the walk in the
// same way. Subtrees demanded strictly below a node with pairwise unrelated
// witnesses split at their deepest common ancestor into distinct children.

FormulaPtr deforall(const FormulaPtr& g) {
  switch (g->kind) {
    case FKind::Forall:
      return fNot(
          fExists(g->vars, deforall(pushNegationsInward(fNot(g->kids[0])))));
    case FKind::Not:
      return fNot(deforall(g->kids[0]));
    case FKind::And:
      return fAnd(deforall(g->kids[0]), deforall(g->kids[1]));
    case FKind::Or:
      return fOr(deforall(g->kids[0]), deforall(g->kids[1]));
    case FKind::Exists:
      return fExists(g->vars, deforall(g->kids[0]));
    default:
      return g;
  }
}

// Set partitions of `items` as lists of groups.
void setPartitions(const std::vector<int>& items,
                   std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == items.size()) {
      out.push_back(cur);
      return;
    }
    for (auto& g : cur) {
      g.push_back(items[i]);
      rec(i + 1);
      g.pop_back();
    }
    cur.push_back({items[i]});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
}

struct C2Builder;

struct DiagVar {
  std::string name;
  std::vector<std::pair<std::string, bool>> unary;  // predicate, polarity
  std::vector<std::pair<FormulaPtr, bool>> rel;     // translated block, polarity
  int parent = -1;
  bool childEdge = false;
  std::vector<int> succKids, descKids;
};

using SlotFn = std::function<FormulaPtr(const std::string&)>;

struct DiagramCtx {
  std::vector<DiagVar> vars;
  std::vector<FormulaPtr> closedLits;  // position-independent conjuncts
  std::string nameA, nameB;
  std::vector<int> otherTops;  // component tops besides the focus component
  int focus = -1;

  std::string other(const std::string& n) const {
    return n == nameA ? nameB : nameA;
  }

  FormulaPtr lit(int v, const std::string& at) const {
    std::vector<FormulaPtr> cs;
    for (auto& [p, pos] : vars[v].unary) {
      FormulaPtr a = fAtom(p, at);
      cs.push_back(pos ? a : fNot(a));
    }
    for (auto& [r, pos] : vars[v].rel) {
      FormulaPtr a = renameFree(r, vars[v].name, at);
      cs.push_back(pos ? a : fNot(a));
    }
    return fConj(cs);
  }

  FormulaPtr typeOf(const std::vector<SlotFn>& slots,
                    const std::vector<char>& T, const std::string& at) const {
    std::vector<FormulaPtr> cs;
    for (size_t j = 0; j < slots.size(); ++j)
      cs.push_back(T[j] ? slots[j](at) : fNot(slots[j](at)));
    return fConj(cs);
  }

  // Distinct children of `at`, one per slot, each satisfying its slot
  // formula; when `bump` names the collection type of the child we must
  // avoid, that type's count is raised by one.
  FormulaPtr counting(const std::vector<SlotFn>& slots, const std::string& at,
                      const std::vector<char>* bump) const {
    size_t s = slots.size();
    if (s == 0) return fTrue();
    std::set<std::map<std::vector<char>, unsigned>> maps;
    std::map<std::vector<char>, unsigned> cur;
    std::function<void(size_t)> rec = [&](size_t j) {
      if (j == s) {
        maps.insert(cur);
        return;
      }
      std::vector<char> T(s, 0);
      for (size_t mask = 0; mask < (size_t(1) << s); ++mask) {
        if (!((mask >> j) & 1)) continue;
        for (size_t b = 0; b < s; ++b) T[b] = (mask >> b) & 1;
        ++cur[T];
        rec(j + 1);
        if (--cur[T] == 0) cur.erase(T);
      }
    };
    rec(0);
    std::vector<FormulaPtr> ds;
    std::string c = other(at);
    for (auto& m : maps) {
      std::vector<FormulaPtr> cs;
      for (auto& [T, cnt] : m) {
        unsigned need = cnt + (bump && *bump == T ? 1 : 0);
        cs.push_back(fCountGe(
            need, c, fAnd(fNav(Rel::succv, at, c), typeOf(slots, T, c))));
      }
      ds.push_back(fConj(cs));
    }
    return fDisj(ds);
  }

  FormulaPtr chiDown(int v, const std::string& at) const {
    return fAnd(lit(v, at), downObligations(v, at));
  }

  // A witness for v weakly below `at` (used below unnamed hosts only).
  FormulaPtr weakBelow(int v, const std::string& at) const {
    std::string w = other(at);
    return fOr(chiDown(v, at),
               fExists({w}, fAnd(fNav(Rel::lessv, at, w), chiDown(v, w))));
  }

  // Pairwise-unrelated witnesses for `part`, all strictly below `at`.
  FormulaPtr wSet(const std::vector<int>& part, const std::string& at) const {
    std::string w = other(at);
    if (part.size() == 1)
      return fExists(
          {w}, fAnd(fNav(Rel::lessv, at, w), chiDown(part[0], w)));
    FormulaPtr deeper =
        fExists({w}, fAnd(fNav(Rel::lessv, at, w), split(part, w)));
    return fOr(split(part, at), deeper);
  }

  // The part splits at `at` into two or more distinct child branches.
  FormulaPtr split(const std::vector<int>& part, const std::string& at) const {
    std::vector<std::vector<std::vector<int>>> parts;
    setPartitions(part, parts);
    std::vector<FormulaPtr> ds;
    for (auto& groups : parts) {
      if (groups.size() < 2) continue;
      std::vector<SlotFn> slots;
      for (auto& g : groups) slots.push_back(hostSlot(g, /*weakSingle=*/true));
      ds.push_back(counting(slots, at, nullptr));
    }
    return fDisj(ds);
  }

  SlotFn hostSlot(std::vector<int> group, bool weakSingle) const {
    return [this, group = std::move(group), weakSingle](const std::string& c) {
      if (group.size() == 1 && weakSingle) return weakBelow(group[0], c);
      return wSet(group, c);
    };
  }

  // All slot sets of v's downward obligations (succv children plus every way
  // of grouping its lessv children under shared hosts), minus `exclude`.
  std::vector<std::vector<SlotFn>> slotSets(int v, int exclude) const {
    std::vector<int> sk, dk;
    for (int u : vars[v].succKids)
      if (u != exclude) sk.push_back(u);
    for (int u : vars[v].descKids)
      if (u != exclude) dk.push_back(u);
    std::vector<std::vector<std::vector<int>>> parts;
    if (dk.empty())
      parts.push_back({});
    else
      setPartitions(dk, parts);
    std::vector<std::vector<SlotFn>> out;
    for (auto& groups : parts) {
      std::vector<SlotFn> slots;
      for (int u : sk)
        slots.push_back(
            [this, u](const std::string& c) { return chiDown(u, c); });
      // Descendant witnesses are non-children of v's image, so they sit
      // strictly below their hosting child even when alone.
      for (auto& g : groups) slots.push_back(hostSlot(g, /*weakSingle=*/false));
      out.push_back(std::move(slots));
    }
    return out;
  }

  // Downward obligations of v at `at`.
  FormulaPtr downObligations(int v, const std::string& at) const {
    std::vector<FormulaPtr> ds;
    for (auto& slots : slotSets(v, -1))
      ds.push_back(counting(slots, at, nullptr));
    return fDisj(ds);
  }

  // The upward walk from v's image (named `at`) through its diagram parent.
  FormulaPtr upPart(int v, const std::string& at) const {
    int p = vars[v].parent;
    if (p < 0) return jumps(otherTops, at);
    std::string o = other(at);
    std::vector<FormulaPtr> ds;
    for (auto& slots : slotSets(p, v)) {
      if (slots.empty()) {
        FormulaPtr rest = fConj({lit(p, o), upPart(p, o)});
        if (vars[v].childEdge) {
          ds.push_back(fExists({o}, fAnd(fNav(Rel::succv, o, at), rest)));
        } else {
          ds.push_back(fExists(
              {o}, fConj({fNav(Rel::lessv, o, at),
                          fNot(fNav(Rel::succv, o, at)), rest})));
        }
        continue;
      }
      size_t s = slots.size();
      for (size_t mask = 0; mask < (size_t(1) << s); ++mask) {
        std::vector<char> T(s);
        for (size_t b = 0; b < s; ++b) T[b] = (mask >> b) & 1;
        FormulaPtr station = fConj(
            {lit(p, o), counting(slots, o, &T), upPart(p, o)});
        if (vars[v].childEdge) {
          // We arrived from a child: test its type in place, then step up.
          ds.push_back(fAnd(
              typeOf(slots, T, at),
              fExists({o}, fAnd(fNav(Rel::succv, o, at), station))));
        } else {
          // Arrived over lessv: name the ancestor branch g we came through,
          // test its type, and step to g's parent.
          std::string g = o;
          std::string po = at;  // reuses (shadows) the lower name
          FormulaPtr inner = fExists(
              {po}, fAnd(fNav(Rel::succv, po, g),
                         fConj({lit(p, po), counting(slots, po, &T),
                                upPart(p, po)})));
          ds.push_back(fExists(
              {g}, fConj({fNav(Rel::lessv, g, at), typeOf(slots, T, g),
                          inner})));
        }
      }
    }
    return fDisj(ds);
  }

  // Place the remaining unrelated components: a nonempty batch hangs off the
  // next divergence ancestor (the branch we come through is either the
  // current node or a strict ancestor of it), the rest continue higher.
  FormulaPtr jumps(const std::vector<int>& remaining,
                   const std::string& at) const {
    if (remaining.empty()) return fTrue();
    std::vector<FormulaPtr> ds;
    size_t n = remaining.size();
    for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
      std::vector<int> batch, rest;
      for (size_t i = 0; i < n; ++i)
        ((mask >> i) & 1 ? batch : rest).push_back(remaining[i]);
      std::vector<std::vector<std::vector<int>>> parts;
      setPartitions(batch, parts);
      for (auto& groups : parts) {
        std::vector<SlotFn> slots;
        for (auto& g : groups)
          slots.push_back(hostSlot(g, /*weakSingle=*/true));
        size_t s = slots.size();
        for (size_t tmask = 0; tmask < (size_t(1) << s); ++tmask) {
          std::vector<char> T(s);
          for (size_t b = 0; b < s; ++b) T[b] = (tmask >> b) & 1;
          std::string o = other(at);
          FormulaPtr station =
              fAnd(counting(slots, o, &T), jumps(rest, o));
          // Divergence directly above the current node.
          ds.push_back(fAnd(typeOf(slots, T, at),
                            fExists({o}, fAnd(fNav(Rel::succv, o, at),
                                              station))));
          // Divergence above a strict ancestor g of the current node.
          std::string g = o, po = at;
          FormulaPtr inner = fExists(
              {po}, fAnd(fNav(Rel::succv, po, g),
                         fAnd(counting(slots, po, &T), jumps(rest, po))));
          ds.push_back(fExists(
              {g}, fConj({fNav(Rel::lessv, g, at), typeOf(slots, T, g),
                          inner})));
        }
      }
    }
    return fDisj(ds);
  }
};

struct C2Builder {
  const Signature& sig;
  unsigned maxWidth;

  FormulaPtr translate(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::True:
      case FKind::False:
      case FKind::UnaryAtom:
      case FKind::Eq:
        return f;
      case FKind::NavAtom:
        if (f->v1 != f->v2)
          throw std::runtime_error("free binary atom outside any block");
        return f;
      case FKind::Not:
        return fNot(translate(f->kids[0]));
      case FKind::And:
        return fAnd(translate(f->kids[0]), translate(f->kids[1]));
      case FKind::Or:
        return fOr(translate(f->kids[0]), translate(f->kids[1]));
      case FKind::Exists:
        return translateBlock(f);
      default:
        throw std::logic_error("unexpected node after preprocessing");
    }
  }

  FormulaPtr translateBlock(const FormulaPtr& f) {
    std::set<std::string> fv = freeVars(f);
    std::string outer = fv.empty() ? "" : *fv.begin();
    std::vector<FormulaPtr> ds;
    for (auto& d : disjuncts(f->kids[0])) {
      FormulaPtr t = translateDiagram(d, outer);
      if (t->kind != FKind::False) ds.push_back(t);
    }
    return fDisj(ds);
  }

  FormulaPtr translateDiagram(const FormulaPtr& d, const std::string& outer) {
    DiagramCtx ctx;
    auto idx = [&](const std::string& n) {
      for (size_t i = 0; i < ctx.vars.size(); ++i)
        if (ctx.vars[i].name == n) return (int)i;
      ctx.vars.push_back({});
      ctx.vars.back().name = n;
      return (int)ctx.vars.size() - 1;
    };
    // First pass registers the variables, the second reads the literals.
    std::vector<std::pair<bool, FormulaPtr>> lits;
    for (auto& c : conjuncts(d)) {
      bool pos = true;
      FormulaPtr a = c;
      if (a->kind == FKind::Not) {
        pos = false;
        a = a->kids[0];
      }
      if (a->kind == FKind::True || a->kind == FKind::False) {
        if (pos == (a->kind == FKind::False)) return fFalse();
        continue;
      }
      for (auto& v : freeVars(a)) idx(v);
      lits.push_back({pos, a});
    }
    size_t n = ctx.vars.size();
    if (n > maxWidth)
      throw std::runtime_error("diagram width exceeds the cap");
    std::vector<std::vector<char>> succ(n, std::vector<char>(n, 0)),
        less(n, std::vector<char>(n, 0));
    for (auto& [pos, a] : lits) {
      switch (a->kind) {
        case FKind::UnaryAtom:
          ctx.vars[idx(a->v1)].unary.push_back({a->pred, pos});
          break;
        case FKind::NavAtom: {
          if (a->rel != Rel::succv && a->rel != Rel::lessv)
            throw std::runtime_error(
                "translation is restricted to the child/descendant relations");
          if (pos)
            (a->rel == Rel::succv ? succ : less)[idx(a->v1)][idx(a->v2)] = 1;
          break;
        }
        case FKind::Eq:
          if (pos && a->v1 != a->v2)
            throw std::runtime_error("input is not in diagram normal form");
          break;
        case FKind::Exists: {
          std::set<std::string> bf = freeVars(a);
          FormulaPtr t = translate(a);
          if (bf.empty())
            ctx.closedLits.push_back(pos ? t : fNot(t));
          else
            ctx.vars[idx(*bf.begin())].rel.push_back({t, pos});
          break;
        }
        default:
          throw std::runtime_error("input is not in diagram normal form");
      }
    }
    if (n == 0) return fConj(ctx.closedLits);

    // Tree-realizability of the pinned configuration.
    for (size_t i = 0; i < n; ++i) {
      if (less[i][i] || succ[i][i]) return fFalse();
      for (size_t j = 0; j < n; ++j) {
        if (succ[i][j] && !less[i][j]) return fFalse();
        if (i != j && less[i][j] && less[j][i]) return fFalse();
        for (size_t k = 0; k < n; ++k) {
          if (less[i][j] && less[j][k] && !less[i][k]) return fFalse();
          if (i != j && less[i][k] && less[j][k] && !less[i][j] &&
              !less[j][i])
            return fFalse();
          if (succ[i][j] && less[i][k] && less[k][j]) return fFalse();
        }
      }
    }
    // Closest-ancestor forest.
    for (size_t j = 0; j < n; ++j) {
      int p = -1;
      for (size_t i = 0; i < n; ++i) {
        if (!less[i][j]) continue;
        if (p < 0 || less[p][i]) p = (int)i;
      }
      ctx.vars[j].parent = p;
      if (p >= 0) {
        ctx.vars[j].childEdge = succ[p][j];
        (ctx.vars[j].childEdge ? ctx.vars[p].succKids : ctx.vars[p].descKids)
            .push_back((int)j);
      }
    }
    auto topOf = [&](int v) {
      while (ctx.vars[v].parent >= 0) v = ctx.vars[v].parent;
      return v;
    };
    int focus = 0;
    if (!outer.empty())
      for (size_t i = 0; i < n; ++i)
        if (ctx.vars[i].name == outer) focus = (int)i;
    bool sentence = outer.empty() || ctx.vars[focus].name != outer;
    ctx.focus = focus;
    for (size_t i = 0; i < n; ++i)
      if (topOf((int)i) != topOf(focus) && ctx.vars[i].parent < 0)
        ctx.otherTops.push_back((int)i);

    ctx.nameA = sentence ? ctx.vars[focus].name : outer;
    ctx.nameB = ctx.nameA + "_o";
    FormulaPtr chi = fConj({ctx.lit(focus, ctx.nameA), fConj(ctx.closedLits),
                            ctx.downObligations(focus, ctx.nameA),
                            ctx.upPart(focus, ctx.nameA)});
    return sentence ? fExists({ctx.nameA}, chi) : chi;
  }
};

}  // namespace

FormulaPtr odfToC2Unordered(const FormulaPtr& f, const Signature& sig,
                            unsigned maxWidth) {
  if (freeVars(f).size() > 1)
    throw std::runtime_error("expected a sentence or one free variable");
  std::function<void(const FormulaPtr&)> checkRels =
      [&](const FormulaPtr& g) {
        if (g->kind == FKind::NavAtom && g->rel != Rel::succv &&
            g->rel != Rel::lessv)
          throw std::runtime_error(
              "translation is restricted to the child/descendant relations");
        for (auto& k : g->kids) checkRels(k);
      };
  checkRels(f);
  if (!classify(f, sig).count(FragmentTag::ODF))
    throw std::runtime_error("input is not one-dimensional");
  FormulaPtr g = deforall(f);
  g = toDiagramNormalForm(g, sig, {Rel::succv, Rel::lessv});
  C2Builder b{sig, maxWidth};
  return b.translate(g);
}

}  // namespace odfkit
