#include <algorithm>
#include <stdexcept>

#include "odfkit/profiles.hpp"

namespace odfkit {

namespace {

void requireTreeSig(const Signature& sig) {
  for (Rel r : sig.nav)
    if (!relLegal(StructureClass::tree, r))
      throw std::runtime_error("tree profiles require a tree signature");
}

size_t relIdx(const KType& t, Rel r) {
  for (size_t i = 0; i < t.navRels.size(); ++i)
    if (t.navRels[i] == r) return i;
  throw std::runtime_error("relation absent from type");
}

bool hasRel(const KType& t, Rel r) {
  return std::find(t.navRels.begin(), t.navRels.end(), r) != t.navRels.end();
}

void permuteTail(const KType& t, std::set<KType>& out) {
  std::vector<unsigned> perm(t.arity);
  for (unsigned i = 0; i < t.arity; ++i) perm[i] = i;
  do {
    out.insert(t.permuted(perm));
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

// One component type entering a combination; its x1 is the shared pivot.
struct Part {
  const KType* t;
  TreePosition pos;
};

// Whether slot s of a sibling-subtree component type is itself a sibling of
// the pivot (subtree roots are exactly the elements horizontally related to
// the pivot).
bool siblingRoot(const KType& t, TreePosition pos, unsigned s) {
  size_t lh = relIdx(t, Rel::lessh);
  return pos == TreePosition::L ? t.nav(lh, s, 0) : t.nav(lh, 0, s);
}

// Value of rel(b,d) for b, d in different positions to the pivot. The only
// cross-position links: ancestors of the pivot dominate everything below or
// beside it, the pivot's parent is also parent of its sibling roots, and
// left sibling roots precede right sibling roots.
bool crossNav(Rel rel, const Part& pi, unsigned si, const Part& pj,
              unsigned sj) {
  if (pi.pos == TreePosition::A) {
    const KType& a = *pi.t;
    if (rel == Rel::lessv) return a.nav(relIdx(a, Rel::lessv), si, 0);
    if (rel == Rel::succv)
      return (pj.pos == TreePosition::L || pj.pos == TreePosition::R) &&
             hasRel(a, Rel::succv) && a.nav(relIdx(a, Rel::succv), si, 0) &&
             siblingRoot(*pj.t, pj.pos, sj);
    return false;
  }
  if (pj.pos == TreePosition::A) return false;
  if (pi.pos == TreePosition::L && pj.pos == TreePosition::R &&
      rel == Rel::lessh)
    return siblingRoot(*pi.t, TreePosition::L, si) &&
           siblingRoot(*pj.t, TreePosition::R, sj);
  return false;
}

// Merge component types sharing the pivot at x1 into a single type; slotPos
// records the position tag of every slot (slot 0 is the pivot).
KType combineParts(const std::vector<Part>& parts,
                   std::vector<TreePosition>& slotPos) {
  const KType& t0 = *parts[0].t;
  Signature sig;
  sig.unary = t0.unaryNames;
  sig.nav.insert(t0.navRels.begin(), t0.navRels.end());
  for (const Part& p : parts)
    if (!(p.t->oneTypeOf(0) == t0.oneTypeOf(0)))
      throw std::runtime_error("components disagree on the base 1-type");
  unsigned arity = 1;
  for (const Part& p : parts) arity += p.t->arity - 1;
  // global slot -> (part, source slot); slot 0 is the shared pivot
  std::vector<std::pair<size_t, unsigned>> src{{0, 0}};
  slotPos.assign(1, parts[0].pos);
  for (size_t p = 0; p < parts.size(); ++p)
    for (unsigned s = 1; s < parts[p].t->arity; ++s) {
      src.push_back({p, s});
      slotPos.push_back(parts[p].pos);
    }
  KType out = KType::blank(sig, arity);
  for (size_t p = 0; p < out.unaryNames.size(); ++p)
    for (unsigned g = 0; g < arity; ++g)
      out.setUnary(p, g, parts[src[g].first].t->unary(p, src[g].second));
  for (size_t r = 0; r < out.navRels.size(); ++r)
    for (unsigned g = 0; g < arity; ++g)
      for (unsigned h = 0; h < arity; ++h) {
        auto [pg, sg] = src[g];
        auto [ph, sh] = src[h];
        bool v;
        if (sg == 0)
          v = parts[ph].t->nav(r, 0, sh);
        else if (sh == 0)
          v = parts[pg].t->nav(r, sg, 0);
        else if (pg == ph)
          v = parts[pg].t->nav(r, sg, sh);
        else
          v = crossNav(out.navRels[r], parts[pg], sg, parts[ph], sh);
        out.setNav(r, g, h, v);
      }
  for (unsigned g = 0; g < arity; ++g)
    for (unsigned h = g + 1; h < arity; ++h) {
      auto [pg, sg] = src[g];
      auto [ph, sh] = src[h];
      bool v;
      if (sg == 0)
        v = parts[ph].t->eq(0, sh);
      else if (pg == ph)
        v = parts[pg].t->eq(sg, sh);
      else
        v = false;  // distinct positions never coincide
      out.setEq(g, h, v);
    }
  return out;
}

void checkComponents(std::initializer_list<const std::set<KType>*> comps) {
  for (const std::set<KType>* c : comps) {
    if (c->empty())
      throw std::runtime_error("components must contain the 1-type");
    if (!hasRel(*c->begin(), Rel::lessh))
      throw std::runtime_error(
          "component combination requires lessh in the signature");
  }
}

}  // namespace

TreeProfile treeProfile(const TreeModel& t, unsigned k, size_t a,
                        const Signature& sig) {
  if (a >= t.size()) throw std::runtime_error("node out of range");
  requireTreeSig(sig);
  Structure s = flatten(t);
  TreeProfile prof;
  size_t n = t.size();
  for (unsigned arity = 1; arity <= k; ++arity) {
    std::vector<int> tuple(arity, 0);
    tuple[0] = (int)a;
    while (true) {
      KType ty = typeOf(s, tuple, sig);
      prof.F.insert(ty);
      bool inA = true, inB = true, inL = true, inR = true;
      for (unsigned i = 1; i < arity; ++i) {
        if (tuple[i] == (int)a) {
          inA = inB = inL = inR = false;
          break;
        }
        switch (s.positionOf((int)a, tuple[i])) {
          case TreePosition::A: inB = inL = inR = false; break;
          case TreePosition::B: inA = inL = inR = false; break;
          case TreePosition::L: inA = inB = inR = false; break;
          case TreePosition::R: inA = inB = inL = false; break;
        }
      }
      if (inA) prof.A.insert(ty);
      if (inB) prof.B.insert(ty);
      if (inL) prof.L.insert(ty);
      if (inR) prof.R.insert(ty);
      unsigned i = 1;
      for (; i < arity; ++i) {
        if (++tuple[i] < (int)n) break;
        tuple[i] = 0;
      }
      if (i == arity) break;
    }
  }
  return prof;
}

std::set<KType> fulltypeTree(const std::set<KType>& A, const std::set<KType>& B,
                             const std::set<KType>& L, const std::set<KType>& R,
                             unsigned k) {
  checkComponents({&A, &B, &L, &R});
  std::set<KType> out;
  for (const KType& pa : A)
    for (const KType& pb : B)
      for (const KType& pl : L)
        for (const KType& pr : R) {
          unsigned arity = 1 + (pa.arity - 1) + (pb.arity - 1) +
                           (pl.arity - 1) + (pr.arity - 1);
          if (arity > k) continue;
          std::vector<TreePosition> slotPos;
          KType t = combineParts({{&pa, TreePosition::A},
                                  {&pb, TreePosition::B},
                                  {&pl, TreePosition::L},
                                  {&pr, TreePosition::R}},
                                 slotPos);
          for (unsigned extra = 0; t.arity + extra <= k; ++extra)
            permuteTail(t.withDuplicatedFirst(extra), out);
        }
  return out;
}

namespace {

// How a new element relates to the pivot of the combined components.
enum class NeighborRel { childOfPivot, parentOfPivot, nextOfPivot, prevOfPivot };

void trySetNav(KType& t, Rel r, unsigned i, unsigned j, bool v) {
  if (hasRel(t, r)) t.setNav(relIdx(t, r), i, j, v);
}

// Insert the new element as slot 0; the old pivot moves to slot 1.
KType liftWithNeighbor(const KType& pi, const KType& mu, NeighborRel rel,
                       const std::vector<TreePosition>& slotPos) {
  Signature sig;
  sig.unary = pi.unaryNames;
  sig.nav.insert(pi.navRels.begin(), pi.navRels.end());
  KType out = KType::blank(sig, pi.arity + 1);
  for (size_t p = 0; p < out.unaryNames.size(); ++p) {
    out.setUnary(p, 0, mu.unary(p, 0));
    for (unsigned g = 0; g < pi.arity; ++g)
      out.setUnary(p, g + 1, pi.unary(p, g));
  }
  for (size_t r = 0; r < out.navRels.size(); ++r)
    for (unsigned g = 0; g < pi.arity; ++g)
      for (unsigned h = 0; h < pi.arity; ++h)
        out.setNav(r, g + 1, h + 1, pi.nav(r, g, h));
  for (unsigned g = 0; g < pi.arity; ++g)
    for (unsigned h = g + 1; h < pi.arity; ++h)
      out.setEq(g + 1, h + 1, pi.eq(g, h));
  // links between the new element (slot 0) and each old slot
  for (unsigned h = 0; h < pi.arity; ++h) {
    unsigned nh = h + 1;
    switch (rel) {
      case NeighborRel::childOfPivot:
        if (h == 0) {
          trySetNav(out, Rel::succv, nh, 0, true);
          trySetNav(out, Rel::lessv, nh, 0, true);
        } else if (slotPos[h] == TreePosition::A) {
          trySetNav(out, Rel::lessv, nh, 0,
                    hasRel(pi, Rel::lessv) &&
                        pi.nav(relIdx(pi, Rel::lessv), h, 0));
        }
        break;
      case NeighborRel::parentOfPivot:
        if (h == 0) {
          trySetNav(out, Rel::succv, 0, nh, true);
          trySetNav(out, Rel::lessv, 0, nh, true);
        } else {
          trySetNav(out, Rel::lessv, 0, nh, true);
          if (slotPos[h] == TreePosition::L || slotPos[h] == TreePosition::R)
            trySetNav(out, Rel::succv, 0, nh,
                      siblingRoot(pi, slotPos[h], h));
        }
        break;
      case NeighborRel::nextOfPivot:
        if (h == 0) {
          trySetNav(out, Rel::succh, nh, 0, true);
          trySetNav(out, Rel::lessh, nh, 0, true);
        } else if (slotPos[h] == TreePosition::L) {
          trySetNav(out, Rel::lessh, nh, 0, siblingRoot(pi, TreePosition::L, h));
        }
        break;
      case NeighborRel::prevOfPivot:
        if (h == 0) {
          trySetNav(out, Rel::succh, 0, nh, true);
          trySetNav(out, Rel::lessh, 0, nh, true);
        } else if (slotPos[h] == TreePosition::R) {
          trySetNav(out, Rel::lessh, 0, nh, siblingRoot(pi, TreePosition::R, h));
        }
        break;
    }
  }
  return out;
}

KType dropSlot(const KType& t, unsigned s) {
  Signature sig;
  sig.unary = t.unaryNames;
  sig.nav.insert(t.navRels.begin(), t.navRels.end());
  KType out = KType::blank(sig, t.arity - 1);
  auto src = [&](unsigned g) { return g < s ? g : g + 1; };
  for (size_t p = 0; p < out.unaryNames.size(); ++p)
    for (unsigned g = 0; g < out.arity; ++g)
      out.setUnary(p, g, t.unary(p, src(g)));
  for (size_t r = 0; r < out.navRels.size(); ++r)
    for (unsigned g = 0; g < out.arity; ++g)
      for (unsigned h = 0; h < out.arity; ++h)
        out.setNav(r, g, h, t.nav(r, src(g), src(h)));
  for (unsigned g = 0; g < out.arity; ++g)
    for (unsigned h = g + 1; h < out.arity; ++h)
      out.setEq(g, h, t.eq(src(g), src(h)));
  return out;
}

// Append a copy of slot s at the end.
KType appendCopy(const KType& t, unsigned s) {
  Signature sig;
  sig.unary = t.unaryNames;
  sig.nav.insert(t.navRels.begin(), t.navRels.end());
  KType out = KType::blank(sig, t.arity + 1);
  unsigned m = t.arity;
  auto src = [&](unsigned g) { return g == m ? s : g; };
  for (size_t p = 0; p < out.unaryNames.size(); ++p)
    for (unsigned g = 0; g < out.arity; ++g)
      out.setUnary(p, g, t.unary(p, src(g)));
  for (size_t r = 0; r < out.navRels.size(); ++r)
    for (unsigned g = 0; g < out.arity; ++g)
      for (unsigned h = 0; h < out.arity; ++h)
        out.setNav(r, g, h, t.nav(r, src(g), src(h)));
  for (unsigned g = 0; g < out.arity; ++g)
    for (unsigned h = g + 1; h < out.arity; ++h)
      out.setEq(g, h, t.eq(src(g), src(h)));
  return out;
}

// Shared body of the four neighbor-component recurrences: combine the given
// components of the neighbor (the pivot), insert the new element of 1-type
// mu, emit variants with the pivot kept (and possibly repeated) or removed,
// closed under tail permutations.
std::set<KType> neighborRecurrence(const KType& mu, NeighborRel rel,
                                   std::vector<std::pair<const std::set<KType>*,
                                                         TreePosition>>
                                       comps,
                                   unsigned k) {
  for (auto& [c, pos] : comps) checkComponents({c});
  std::set<KType> out;
  // odometer over one type per component
  std::vector<std::set<KType>::const_iterator> its;
  for (auto& [c, pos] : comps) its.push_back(c->begin());
  while (true) {
    unsigned arity = 1;
    for (auto& it : its) arity += it->arity - 1;
    if (arity <= k) {
      std::vector<Part> parts;
      for (size_t i = 0; i < its.size(); ++i)
        parts.push_back({&*its[i], comps[i].second});
      std::vector<TreePosition> slotPos;
      KType pi = combineParts(parts, slotPos);
      KType full = liftWithNeighbor(pi, mu, rel, slotPos);
      // pivot kept: the neighbor itself, repeated any number of times
      for (KType v = full; v.arity <= k; v = appendCopy(v, 1))
        permuteTail(v, out);
      // pivot removed
      permuteTail(dropSlot(full, 1), out);
    }
    size_t i = 0;
    for (; i < its.size(); ++i) {
      if (++its[i] != comps[i].first->end()) break;
      its[i] = comps[i].first->begin();
    }
    if (i == its.size()) break;
  }
  return out;
}

}  // namespace

std::set<KType> computeChildA(const KType& childOneType,
                              const std::set<KType>& pa,
                              const std::set<KType>& pl,
                              const std::set<KType>& pr, unsigned k) {
  return neighborRecurrence(childOneType, NeighborRel::childOfPivot,
                            {{&pa, TreePosition::A},
                             {&pl, TreePosition::L},
                             {&pr, TreePosition::R}},
                            k);
}

std::set<KType> computeParentB(const KType& parentOneType,
                               const std::set<KType>& cb,
                               const std::set<KType>& cl,
                               const std::set<KType>& cr, unsigned k) {
  return neighborRecurrence(parentOneType, NeighborRel::parentOfPivot,
                            {{&cb, TreePosition::B},
                             {&cl, TreePosition::L},
                             {&cr, TreePosition::R}},
                            k);
}

std::set<KType> computeNextL(const KType& selfOneType,
                             const std::set<KType>& prevB,
                             const std::set<KType>& prevL, unsigned k) {
  return neighborRecurrence(selfOneType, NeighborRel::nextOfPivot,
                            {{&prevB, TreePosition::B},
                             {&prevL, TreePosition::L}},
                            k);
}

std::set<KType> computePrevR(const KType& selfOneType,
                             const std::set<KType>& nextB,
                             const std::set<KType>& nextR, unsigned k) {
  return neighborRecurrence(selfOneType, NeighborRel::prevOfPivot,
                            {{&nextB, TreePosition::B},
                             {&nextR, TreePosition::R}},
                            k);
}

}  // namespace odfkit
