#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "odfkit/normalform.hpp"
#include "odfkit/sat.hpp"
#include "odfkit/semantics.hpp"
#include "odfkit/syntax.hpp"

using namespace odfkit;

static Signature wordSig(std::vector<std::string> preds = {"P"}) {
  Signature s;
  s.unary = std::move(preds);
  s.nav = {Rel::succh, Rel::lessh};
  return s;
}

static Signature treeSig(std::vector<std::string> preds = {"P"}) {
  Signature s;
  s.unary = std::move(preds);
  s.nav = {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv};
  return s;
}

TEST_CASE("contradictions are refuted without search") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula("E x. (P(x) & !P(x))", sig);
  SatCaps caps;
  caps.maxLen = 1;
  for (SatStrategy st : {SatStrategy::brute, SatStrategy::profile}) {
    caps.strategy = st;
    CHECK(satWord(f, sig, caps).verdict == SatVerdict::unsatProved);
  }
  CHECK(satOmega(f, sig, caps).verdict == SatVerdict::unsatProved);
  Signature ts = treeSig();
  FormulaPtr ft = parseFormula("E x. (P(x) & !P(x))", ts);
  CHECK(satTree(ft, ts, caps).verdict == SatVerdict::unsatProved);
  FormulaPtr g = parseFormula("A x. (P(x) & !P(x))", sig);
  CHECK(satWord(g, sig, caps).verdict == SatVerdict::unsatProved);
}

TEST_CASE("interval pattern formula is satisfiable on words") {
  // two intervals, each containing a P position strictly inside
  Signature sig = wordSig();
  FormulaPtr f = parseFormula(
      "E y0 y1 y2 x1 x2. "
      "(((lessh(y0,x1) & lessh(x1,y1)) & P(x1)) &"
      " ((lessh(y1,x2) & lessh(x2,y2)) & P(x2)))",
      sig);
  SatCaps caps;
  caps.maxLen = 5;
  SatResult prev;
  for (SatStrategy st : {SatStrategy::brute, SatStrategy::profile}) {
    caps.strategy = st;
    SatResult r = satWord(f, sig, caps);
    REQUIRE(r.verdict == SatVerdict::sat);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->word.size() >= 4);
    CHECK(evalFO(flatten(r.witness->word), f));
    if (st == SatStrategy::profile)
      CHECK(r.witness->word.positions == prev.witness->word.positions);
    prev = r;
  }
}

TEST_CASE("no-last-element formula is unsat over finite words") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula("A x. E y. lessh(x,y)", sig);
  SatCaps caps;
  caps.maxLen = 6;
  for (SatStrategy st : {SatStrategy::brute, SatStrategy::profile}) {
    caps.strategy = st;
    SatResult r = satWord(f, sig, caps);
    CHECK(r.verdict == SatVerdict::unsatWithinCaps);
  }
}

TEST_CASE("omega satisfiability separates from finite words") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula(
      "(A x. E y. (lessh(x,y) & P(y)) & E x. !P(x))", sig);
  SatCaps caps;
  caps.maxLen = 6;
  caps.maxPrefix = 2;
  caps.maxPeriod = 2;
  SatResult r = satOmega(f, sig, caps);
  REQUIRE(r.verdict == SatVerdict::sat);
  REQUIRE(r.witness.has_value());
  const LassoWord& w = r.witness->lasso;
  // semantic check: P recurs (some period position), some position lacks P
  bool periodP = false, someNotP = false;
  for (const LabelSet& ls : w.period) {
    if (ls.count("P")) periodP = true;
    if (!ls.count("P")) someNotP = true;
  }
  for (const LabelSet& ls : w.prefix)
    if (!ls.count("P")) someNotP = true;
  CHECK(periodP);
  CHECK(someNotP);
  for (SatStrategy st : {SatStrategy::brute, SatStrategy::profile}) {
    caps.strategy = st;
    CHECK(satWord(f, sig, caps).verdict == SatVerdict::unsatWithinCaps);
  }
}

TEST_CASE("purely unary witnesses transfer between word and omega") {
  Signature sig = wordSig({"P", "Q"});
  FormulaPtr f = parseFormula("(E x. P(x) & E x. Q(x))", sig);
  SatCaps caps;
  caps.maxLen = 4;
  caps.maxPrefix = 2;
  caps.maxPeriod = 2;
  SatResult rw = satWord(f, sig, caps);
  REQUIRE(rw.verdict == SatVerdict::sat);
  CHECK(satOmega(f, sig, caps).verdict == SatVerdict::sat);
  // pad the finite witness into a lasso; its canonical expansion is accepted
  NormalFormResult nf = toNormalForm(f, sig);
  unsigned k = std::max(1u, nf.shape.widthValue);
  LassoWord padded;
  padded.prefix = rw.witness->word.positions;
  padded.period = {rw.witness->word.positions.back()};
  Structure ext = expandCanonical(flatten(padded.unroll(2)), nf);
  LassoWord extLasso;
  for (size_t i = 0; i < padded.prefix.size(); ++i)
    extLasso.prefix.push_back(ext.labels[i]);
  extLasso.period = {ext.labels[padded.prefix.size() + 1]};
  CHECK(evalNormalFormOnLasso(extLasso, nf.formula, k, nf.extendedSig));
}

TEST_CASE("normal form truth on lassos") {
  Signature sig = wordSig();
  FormulaPtr fe = parseFormula("A x. E y. (lessh(x,y) & P(y))", sig);
  CHECK(evalNormalFormOnLasso({{{}}, {{"P"}}}, fe, 2, sig));
  CHECK(!evalNormalFormOnLasso({{}, {{}}}, fe, 2, sig));
  FormulaPtr contra = parseFormula("A x. (P(x) & !P(x))", sig);
  CHECK(!evalNormalFormOnLasso({{}, {{"P"}}}, contra, 1, sig));
  CHECK(!evalNormalFormOnLasso({{{"P"}}, {{}}}, contra, 1, sig));
  CHECK_THROWS(evalNormalFormOnLasso({{}, {{}}},
                                     parseFormula("E x. P(x)", sig), 1, sig));
}

TEST_CASE("lasso truth is invariant under period doubling") {
  Signature sig = wordSig();
  FormulaPtr fe = parseFormula("A x. E y. (lessh(x,y) & P(y))", sig);
  FormulaPtr fu = parseFormula("A x. P(x)", sig);
  std::mt19937 rng(7);
  for (int it = 0; it < 12; ++it) {
    LassoWord w;
    size_t plen = rng() % 3, qlen = 1 + rng() % 2;
    for (size_t i = 0; i < plen; ++i)
      w.prefix.push_back(rng() & 1 ? LabelSet{"P"} : LabelSet{});
    for (size_t i = 0; i < qlen; ++i)
      w.period.push_back(rng() & 1 ? LabelSet{"P"} : LabelSet{});
    LassoWord dd = w;
    dd.period.insert(dd.period.end(), w.period.begin(), w.period.end());
    for (const FormulaPtr& f : {fe, fu})
      CHECK(evalNormalFormOnLasso(w, f, 2, sig) ==
            evalNormalFormOnLasso(dd, f, 2, sig));
    // purely unary truth matches finite evaluation on a short unrolling
    CHECK(evalNormalFormOnLasso(w, fu, 1, sig) ==
          evalFO(flatten(w.unroll(2)), fu));
  }
}

TEST_CASE("tree satisfiability basics") {
  Signature sig;
  sig.unary = {"P"};
  sig.nav = {Rel::succv};
  FormulaPtr f = parseFormula("E x y. succv(x,y)", sig);
  SatCaps caps;
  caps.maxDepth = 2;
  caps.maxBranch = 2;
  caps.strategy = SatStrategy::brute;
  SatResult r = satTree(f, sig, caps);
  REQUIRE(r.verdict == SatVerdict::sat);
  CHECK(r.witness->tree.size() == 2);
  // the profile strategy needs the ordered signature
  caps.strategy = SatStrategy::profile;
  CHECK_THROWS(satTree(f, sig, caps));
}

TEST_CASE("three distinct children need branching three") {
  Signature sig = treeSig({"P", "Q"});
  FormulaPtr f = parseFormula(
      "E x y z w. "
      "(((succv(x,y) & succv(x,z)) & succv(x,w)) &"
      " ((P(y) & Q(y)) & ((P(z) & !Q(z)) & (!P(w) & Q(w)))))",
      sig);
  SatCaps caps;
  caps.maxDepth = 1;
  caps.maxBranch = 2;
  caps.strategy = SatStrategy::brute;
  CHECK(satTree(f, sig, caps).verdict == SatVerdict::unsatWithinCaps);
  caps.maxBranch = 3;
  SatResult r = satTree(f, sig, caps);
  REQUIRE(r.verdict == SatVerdict::sat);
  CHECK(r.witness->tree.size() >= 4);
  CHECK(evalFO(flatten(r.witness->tree), f));
}

namespace {

FormulaPtr randomClosed(std::mt19937& rng, const Signature& sig,
                        const std::set<Rel>& rels) {
  std::vector<std::string> scope;
  std::vector<Rel> rv(rels.begin(), rels.end());
  std::function<FormulaPtr(unsigned)> go = [&](unsigned depth) -> FormulaPtr {
    unsigned roll = rng() % 10;
    if (depth == 0 || (roll < 4 && !scope.empty())) {
      // literal over the variables in scope
      const std::string& v = scope[rng() % scope.size()];
      FormulaPtr atom;
      if (rng() % 3 == 0 && scope.size() >= 2) {
        const std::string& u = scope[rng() % scope.size()];
        atom = rng() % 4 == 0 ? fEq(u, v) : fNav(rv[rng() % rv.size()], u, v);
      } else {
        atom = fAtom(sig.unary[rng() % sig.unary.size()], v);
      }
      return rng() & 1 ? fNot(atom) : atom;
    }
    if (roll < 7 || scope.size() >= 3) {
      FormulaPtr a = go(depth - 1), b = go(depth - 1);
      return rng() & 1 ? fAnd(a, b) : fOr(a, b);
    }
    std::string v = "v" + std::to_string(scope.size());
    scope.push_back(v);
    FormulaPtr body = go(depth - 1);
    scope.pop_back();
    return rng() & 1 ? fExists({v}, body) : fForall({v}, body);
  };
  scope.push_back("v0");
  FormulaPtr body = go(2);
  scope.pop_back();
  return rng() & 1 ? fExists({"v0"}, body) : fForall({"v0"}, body);
}

}  // namespace

TEST_CASE("brute and profile strategies agree on random word formulas") {
  Signature sig = wordSig();
  std::mt19937 rng(41);
  int done = 0;
  while (done < 25) {
    FormulaPtr f = randomClosed(rng, sig, {Rel::succh, Rel::lessh});
    if (classify(f, sig).count(FragmentTag::ODF) == 0) continue;
    ++done;
    SatCaps caps;
    caps.maxLen = 4;
    caps.strategy = SatStrategy::brute;
    SatResult rb = satWord(f, sig, caps);
    caps.strategy = SatStrategy::profile;
    SatResult rp = satWord(f, sig, caps);
    CHECK(rb.verdict == rp.verdict);
    if (rb.verdict == SatVerdict::sat)
      CHECK(rb.witness->word.positions == rp.witness->word.positions);
  }
}

TEST_CASE("brute and profile strategies agree on random tree formulas") {
  Signature sig = treeSig();
  std::mt19937 rng(43);
  int done = 0;
  while (done < 12) {
    FormulaPtr f = randomClosed(
        rng, sig, {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv});
    if (classify(f, sig).count(FragmentTag::ODF) == 0) continue;
    ++done;
    SatCaps caps;
    caps.maxDepth = 2;
    caps.maxBranch = 2;
    caps.strategy = SatStrategy::brute;
    SatResult rb = satTree(f, sig, caps);
    caps.strategy = SatStrategy::profile;
    SatResult rp = satTree(f, sig, caps);
    CHECK(rb.verdict == rp.verdict);
    if (rb.verdict == SatVerdict::sat)
      CHECK(rb.witness->tree.nodes == rp.witness->tree.nodes);
  }
}

TEST_CASE("fragment and input validation") {
  Signature sig = wordSig();
  SatCaps caps;
  CHECK_THROWS(satWord(parseFormula("P(x)", sig), sig, caps));  // open
  CHECK_THROWS(satWord(parseFormula("E>=2 x. P(x)", sig), sig, caps));
  Signature ts = treeSig();
  CHECK_THROWS(
      satWord(parseFormula("E x y. succv(x,y)", ts), ts, caps));  // wrong class
  caps.maxLen = 0;
  CHECK_THROWS(satWord(parseFormula("E x. P(x)", sig), sig, caps));
}
