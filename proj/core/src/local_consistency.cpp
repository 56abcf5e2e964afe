#include <stdexcept>

#include "odfkit/profiles.hpp"

namespace odfkit {

namespace {

bool singletonOneType(const std::set<KType>& comp, const KType& mu) {
  return comp == std::set<KType>{mu};
}

}  // namespace

ConsistencyReport isLocallyConsistent(const TreeModel& t,
                                      const ProfileLabeling& lab, unsigned k,
                                      const Signature& sig) {
  if (lab.omega.size() != t.size() || lab.xi.size() != t.size())
    throw std::runtime_error("labeling does not cover the tree");
  Structure s = flatten(t);
  size_t n = t.size();
  std::vector<std::vector<size_t>> kids(n);
  for (size_t i = 1; i < n; ++i) kids[s.parent[i]].push_back(i);

  auto fail = [&](const std::string& cond, size_t node) {
    return ConsistencyReport{false,
                             cond + " at node " + addrToString(t.nodes[node])};
  };

  for (size_t i = 0; i < n; ++i) {
    const TreeProfile& p = lab.xi[i];
    const KType& mu = lab.omega[i];
    if (!(mu == typeOf(s, {(int)i}, sig)))
      return fail("assigned 1-type differs from the node's 1-type", i);
    try {
      if (p.F != fulltypeTree(p.A, p.B, p.L, p.R, k))
        return fail("full-type component mismatch", i);
    } catch (const std::exception&) {
      return fail("full-type component mismatch", i);
    }
    bool isRoot = s.parent[i] == -1;
    bool isLeaf = kids[i].empty();
    bool firstSib = isRoot || s.sibIndex[i] == 0;
    bool lastSib = isRoot || (size_t)s.sibIndex[i] + 1 == kids[s.parent[i]].size();
    if (isRoot && !singletonOneType(p.A, mu))
      return fail("root must have a bare above-component", i);
    if (isLeaf && !singletonOneType(p.B, mu))
      return fail("leaf must have a bare below-component", i);
    if (firstSib && !singletonOneType(p.L, mu))
      return fail("first sibling must have a bare left-component", i);
    if (lastSib && !singletonOneType(p.R, mu))
      return fail("last sibling must have a bare right-component", i);
  }
  for (size_t a = 0; a < n; ++a) {
    const TreeProfile& pa = lab.xi[a];
    for (size_t c : kids[a]) {
      const TreeProfile& pc = lab.xi[c];
      try {
        if (pc.A != computeChildA(lab.omega[c], pa.A, pa.L, pa.R, k))
          return fail("above-component recurrence fails", c);
        if (pa.B != computeParentB(lab.omega[a], pc.B, pc.L, pc.R, k))
          return fail("below-component recurrence fails", a);
      } catch (const std::exception&) {
        return fail("neighbor components inconsistent", a);
      }
    }
    for (size_t j = 0; j + 1 < kids[a].size(); ++j) {
      size_t u = kids[a][j], v = kids[a][j + 1];
      try {
        if (lab.xi[v].L !=
            computeNextL(lab.omega[v], lab.xi[u].B, lab.xi[u].L, k))
          return fail("left-component recurrence fails", v);
        if (lab.xi[u].R !=
            computePrevR(lab.omega[u], lab.xi[v].B, lab.xi[v].R, k))
          return fail("right-component recurrence fails", u);
      } catch (const std::exception&) {
        return fail("neighbor components inconsistent", u);
      }
    }
  }
  return {};
}

}  // namespace odfkit
