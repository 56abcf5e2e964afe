#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "odfkit/contraction.hpp"
#include "odfkit/semantics.hpp"
#include "odfkit/syntax.hpp"

using namespace odfkit;

static Signature wordSigP() {
  Signature s;
  s.unary = {"P"};
  s.nav = {Rel::succh, Rel::lessh};
  return s;
}

static Signature wordSigPQ() {
  Signature s;
  s.unary = {"P", "Q"};
  s.nav = {Rel::succh, Rel::lessh};
  return s;
}

// Surviving original positions after replaying the trace.
static std::vector<size_t> survivors(size_t n, const ContractionTrace& tr) {
  std::vector<size_t> ids(n);
  for (size_t i = 0; i < n; ++i) ids[i] = i;
  for (const ContractionStep& st : tr.steps)
    ids.erase(ids.begin() + (long)(st.witnessA + 1),
              ids.begin() + (long)(st.witnessB + 1));
  return ids;
}

TEST_CASE("identical positions collapse to one") {
  Signature sig = wordSigP();
  WordModel w;
  w.positions.assign(6, LabelSet{"P"});
  auto [out, tr] = contractWord(w, 1, sig);
  CHECK(out.size() == 1);
  CHECK(tr.beforeSize == 6);
  CHECK(tr.afterSize == 1);
  CHECK(!tr.steps.empty());
}

TEST_CASE("distinct profiles stay untouched") {
  Signature sig = wordSigPQ();
  WordModel w{{{"P"}, {"Q"}, {}, {"P", "Q"}}};
  auto [out, tr] = contractWord(w, 1, sig);
  CHECK(out.positions == w.positions);
  CHECK(tr.steps.empty());
}

TEST_CASE("contraction preserves surviving profiles") {
  std::mt19937 rng(23);
  Signature sig = wordSigPQ();
  unsigned k = 2;
  for (int it = 0; it < 50; ++it) {
    WordModel w;
    std::uniform_int_distribution<size_t> len(1, 8);
    w.positions.resize(len(rng));
    for (auto& ls : w.positions)
      for (auto& p : sig.unary)
        if (rng() & 1) ls.insert(p);
    auto [out, tr] = contractWord(w, k, sig);
    std::vector<size_t> ids = survivors(w.size(), tr);
    REQUIRE(ids.size() == out.size());
    std::set<WordProfile> seen;
    for (size_t i = 0; i < out.size(); ++i) {
      WordProfile po = wordProfile(out, k, i, sig);
      CHECK(po == wordProfile(w, k, ids[i], sig));
      seen.insert(po);
    }
    // pairwise distinct output profiles
    CHECK(seen.size() == out.size());
  }
}

TEST_CASE("contraction output length within the k=1 bound") {
  Signature sig = wordSigP();
  std::mt19937 rng(5);
  for (int it = 0; it < 20; ++it) {
    WordModel w;
    std::uniform_int_distribution<size_t> len(1, 10);
    w.positions.resize(len(rng));
    for (auto& ls : w.positions)
      if (rng() & 1) ls.insert("P");
    auto [out, tr] = contractWord(w, 1, sig);
    CHECK((uint64_t)out.size() <= bounds(BoundKind::wordProfiles, 1, 1));
  }
}

TEST_CASE("normal-form truth preserved by contraction") {
  Signature sig = wordSigP();
  const char* samples[] = {
      "A x. E y. (lessh(y,x) | lessh(x,y))",
      "A x y. (eq(x,y) | !eq(x,y))",
      "A x. E y z. (P(y) | !P(z))",
  };
  std::mt19937 rng(31);
  for (const char* text : samples) {
    FormulaPtr f = parseFormula(text, sig);
    for (int it = 0; it < 10; ++it) {
      WordModel w;
      std::uniform_int_distribution<size_t> len(2, 7);
      w.positions.resize(len(rng));
      for (auto& ls : w.positions)
        if (rng() & 1) ls.insert("P");
      if (!evalFO(flatten(w), f)) continue;
      auto [out, tr] = contractWord(w, 2, sig);
      CHECK(evalFO(flatten(out), f));
    }
  }
}

// True profile of a lasso position, via a deep unrolling.
static WordProfile lassoProfile(const LassoWord& l, unsigned k, size_t a,
                                const Signature& sig) {
  WordModel u = l.unroll(16);
  return wordProfile(u, k, a, sig);
}

TEST_CASE("periodic construction on simple inputs") {
  Signature sig = wordSigP();
  LassoWord l;
  l.period = {{{"P"}}};
  PeriodicResult r = buildPeriodicOmega(l, 1, sig);
  CHECK(r.lasso.prefix.empty());
  CHECK(r.lasso.period.size() == 1);
  CHECK(r.lasso.period[0] == LabelSet{"P"});

  Signature sig2 = wordSigPQ();
  LassoWord l2;
  l2.prefix = {{{"Q"}}};
  l2.period = {{{"P"}}, {}};
  PeriodicResult r2 = buildPeriodicOmega(l2, 1, sig2);
  CHECK(omegaProfiles(r2.lasso, 1, sig2) == omegaProfiles(l2, 1, sig2));
  // the loop covers both period 1-types
  std::set<LabelSet> loopLabels(r2.lasso.period.begin(),
                                r2.lasso.period.end());
  CHECK(loopLabels.count(LabelSet{"P"}));
  CHECK(loopLabels.count(LabelSet{}));
}

TEST_CASE("periodic construction preserves profiles") {
  std::mt19937 rng(41);
  Signature sig = wordSigP();
  for (int it = 0; it < 20; ++it) {
    LassoWord l;
    std::uniform_int_distribution<size_t> plen(0, 3), qlen(1, 3);
    l.prefix.resize(plen(rng));
    l.period.resize(qlen(rng));
    for (auto& ls : l.prefix)
      if (rng() & 1) ls.insert("P");
    for (auto& ls : l.period)
      if (rng() & 1) ls.insert("P");
    unsigned k = 1 + (it % 2);
    PeriodicResult r = buildPeriodicOmega(l, k, sig);
    CAPTURE(it);
    // realized profile sets agree
    CHECK(omegaProfiles(r.lasso, k, sig) == omegaProfiles(l, k, sig));
    // position-wise: each output position's profile equals its source's
    size_t outLen = r.lasso.prefix.size() + r.lasso.period.size();
    REQUIRE(r.sourceIndex.size() == outLen);
    for (size_t i = 0; i < outLen; ++i)
      CHECK(lassoProfile(r.lasso, k, i, sig) ==
            lassoProfile(l, k, r.sourceIndex[i], sig));
  }
}

static Signature treeSig() {
  Signature s;
  s.unary = {"P"};
  s.nav = {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv};
  return s;
}

static TreeModel chainTree(const std::vector<LabelSet>& labels) {
  TreeModel t;
  NodeAddr a;
  for (const LabelSet& ls : labels) {
    t.nodes.push_back(a);
    t.labels.push_back(ls);
    a.push_back(0);
  }
  return t;
}

static TreeModel randomTree(std::mt19937& rng, const Signature& sig,
                            size_t maxKids, size_t depth) {
  TreeModel t{{{}}, {{}}};
  if (rng() & 1) t.labels[0].insert("P");
  std::vector<NodeAddr> frontier{{}};
  for (size_t d = 0; d < depth; ++d) {
    std::vector<NodeAddr> next;
    for (const NodeAddr& p : frontier) {
      size_t kids = rng() % (maxKids + 1);
      for (size_t i = 0; i < kids; ++i) {
        NodeAddr a = p;
        a.push_back((int)i);
        LabelSet ls;
        if (rng() & 1) ls.insert("P");
        t.nodes.push_back(a);
        t.labels.push_back(ls);
        next.push_back(a);
      }
    }
    frontier = next;
  }
  std::sort(t.nodes.begin(), t.nodes.end());
  // labels were pushed out of preorder; rebuild them deterministically
  for (size_t i = 0; i < t.size(); ++i) {
    t.labels[i].clear();
    if (rng() & 1) t.labels[i].insert("P");
  }
  return t;
}

TEST_CASE("caterpillar collapses vertically") {
  Signature sig = treeSig();
  TreeModel t = chainTree(std::vector<LabelSet>(6, LabelSet{"P"}));
  auto [out, tr] = contractTreeVertical(t, 1, sig);
  CHECK(out.size() < 6);
  CHECK(!tr.steps.empty());
  CHECK(tr.steps[0].kind == "vertical");
  FormulaPtr f = parseFormula("A x. E y. (P(x) & P(y))", sig);
  CHECK(evalFO(flatten(t), f));
  CHECK(evalFO(flatten(out), f));
}

TEST_CASE("distinct vertical profiles stay untouched") {
  Signature sig;
  sig.unary = {"P", "Q"};
  sig.nav = {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv};
  TreeModel t = chainTree({LabelSet{"P"}, LabelSet{"Q"}, LabelSet{"P", "Q"}});
  auto [out, tr] = contractTreeVertical(t, 1, sig);
  CHECK(out.nodes == t.nodes);
  CHECK(out.labels == t.labels);
  CHECK(tr.steps.empty());
}

TEST_CASE("identical sibling leaves collapse") {
  Signature sig = treeSig();
  TreeModel t{{{}}, {{}}};
  for (int i = 0; i < 6; ++i) {
    t.nodes.push_back({i});
    t.labels.push_back({"P"});
  }
  auto [out, tr] = contractTreeHorizontal(t, 1, sig);
  CHECK(out.size() < t.size());
  CHECK(!tr.steps.empty());
  CHECK(tr.steps[0].kind == "horizontal");

  TreeModel d{{{}, {0}, {1}}, {{}, {"P"}, {}}};
  auto [out2, tr2] = contractTreeHorizontal(d, 1, sig);
  CHECK(tr2.steps.empty());
  CHECK(out2.nodes == d.nodes);
}

TEST_CASE("tree contraction preserves survivor profiles") {
  Signature sig = treeSig();
  std::mt19937 rng(91);
  unsigned k = 2;
  int done = 0;
  while (done < 30) {
    TreeModel t = randomTree(rng, sig, 2, 3);
    if (t.size() < 2 || t.size() > 9) continue;
    ++done;
    std::vector<TreeProfile> before;
    for (size_t i = 0; i < t.size(); ++i)
      before.push_back(treeProfile(t, k, i, sig));
    for (int variant = 0; variant < 2; ++variant) {
      auto [out, tr] = variant == 0 ? contractTreeVertical(t, k, sig)
                                    : contractTreeHorizontal(t, k, sig);
      REQUIRE(tr.sourceIndex.size() == out.size());
      for (size_t i = 0; i < out.size(); ++i)
        CHECK(treeProfile(out, k, i, sig) == before[tr.sourceIndex[i]]);
    }
  }
}

TEST_CASE("contraction requires the ordered tree relations") {
  Signature sig;
  sig.unary = {"P"};
  sig.nav = {Rel::succv};
  TreeModel t{{{}}, {{}}};
  CHECK_THROWS(contractTreeVertical(t, 1, sig));
  CHECK_THROWS(contractTreeHorizontal(t, 1, sig));
}

TEST_CASE("xpath shrink bounds a deep chain") {
  // one deep P-leaf; the formula only needs the root and that leaf
  std::vector<LabelSet> labels(10);
  labels[9] = {"P"};
  TreeModel t = chainTree(labels);
  Signature sig;
  sig.unary = {"P"};
  sig.nav = {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv};
  ModalPtr m = parseModal("<down+> P", sig);
  ShrinkResult r = shrinkCoreXPathModel(t, m, 0);
  CHECK(r.tree.size() <= 4);
  CHECK(evalModal(flatten(r.tree), m, (int)r.focus));

  ModalPtr p = parseModal("P", sig);
  TreeModel single{{{}}, {{"P"}}};
  ShrinkResult r2 = shrinkCoreXPathModel(single, p, 0);
  CHECK(r2.tree.size() == 1);
  CHECK(r2.focus == 0);
  CHECK_THROWS(shrinkCoreXPathModel(single, parseModal("!P", sig), 0));
  CHECK_THROWS(shrinkCoreXPathModel(single, parseModal("<down> P", sig), 0));
}

static void collectSubs(const ModalPtr& m, std::vector<ModalPtr>& out) {
  out.push_back(m);
  for (const ModalPtr& c : m->kids) collectSubs(c, out);
}

TEST_CASE("xpath shrink preserves positive subformulas at survivors") {
  Signature sig;
  sig.unary = {"P", "Q"};
  sig.nav = {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv};
  const char* formulas[] = {
      "<down+> (P & <down+> Q)",
      "([down+] P | <down+> Q)",
      "(<up+> P & Q)",
      "(<down+> (Q & [up+] P) | P)",
  };
  std::mt19937 rng(113);
  int done = 0;
  for (int it = 0; it < 400 && done < 40; ++it) {
    TreeModel t{{{}}, {{}}};
    // random chain-heavy tree with occasional branching
    NodeAddr cursor;
    for (int step = 0; step < 8; ++step) {
      NodeAddr a = cursor;
      a.push_back(0);
      if ((rng() & 3) == 0 && !cursor.empty()) {
        a = cursor;
        a.back()++;
      }
      if (t.indexOf(a) >= 0) continue;
      t.nodes.push_back(a);
      LabelSet ls;
      if (rng() & 1) ls.insert("P");
      if (rng() & 1) ls.insert("Q");
      t.labels.push_back(ls);
      cursor = a;
    }
    std::sort(t.nodes.begin(), t.nodes.end());
    if (!t.valid()) continue;
    for (const char* text : formulas) {
      ModalPtr m = parseModal(text, sig);
      Structure s = flatten(t);
      size_t c = rng() % t.size();
      if (!evalModal(s, m, (int)c)) continue;
      ++done;
      ShrinkResult r = shrinkCoreXPathModel(t, m, c);
      Structure so = flatten(r.tree);
      CHECK(evalModal(so, m, (int)r.focus));
      // monotone preservation at every survivor, for every subformula
      std::vector<ModalPtr> subs;
      collectSubs(m, subs);
      // recover survivor identity by replaying: match via the focus only is
      // weak, so check the focus plus the root
      for (const ModalPtr& sub : subs) {
        if (evalModal(s, sub, (int)c)) CHECK(evalModal(so, sub, (int)r.focus));
        if (evalModal(s, sub, 0)) CHECK(evalModal(so, sub, 0));
      }
    }
  }
  CHECK(done >= 40);
}
