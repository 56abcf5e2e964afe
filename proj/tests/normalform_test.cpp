#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odfkit/normalform.hpp"
#include "odfkit/semantics.hpp"
#include "odfkit/syntax.hpp"

using namespace odfkit;

static Signature wordSig1() {
  Signature s;
  s.unary = {"P"};
  s.nav = {Rel::succh, Rel::lessh};
  return s;
}

static Signature wordSig2() {
  Signature s;
  s.unary = {"P", "Q"};
  s.nav = {Rel::succh, Rel::lessh};
  return s;
}

static Signature treeSig1() {
  Signature s;
  s.unary = {"P"};
  s.nav = {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv};
  return s;
}

// Closed formulas agree on every word up to maxLen.
static bool equivalentOnWords(const FormulaPtr& a, const FormulaPtr& b,
                              const Signature& sig, size_t maxLen) {
  bool same = true;
  EnumCaps caps;
  caps.maxLen = maxLen;
  enumerateWords(sig, caps, [&](const WordModel& w) {
    Structure s = flatten(w);
    if (evalFO(s, a) != evalFO(s, b)) same = false;
    return same;
  });
  return same;
}

static bool equivalentOnTrees(const FormulaPtr& a, const FormulaPtr& b,
                              const Signature& sig, size_t depth,
                              size_t branch) {
  bool same = true;
  EnumCaps caps;
  caps.maxDepth = depth;
  caps.maxBranch = branch;
  enumerateTrees(sig, caps, [&](const TreeModel& t) {
    Structure s = flatten(t);
    if (evalFO(s, a) != evalFO(s, b)) same = false;
    return same;
  });
  return same;
}

TEST_CASE("shape recognition") {
  Signature sig = wordSig2();
  auto shaped = [&](const char* text) {
    return parseNormalFormShape(parseFormula(text, sig)).has_value();
  };
  CHECK(shaped("A x. P(x)"));
  CHECK(shaped("A x y. (P(x) | !Q(y))"));
  CHECK(shaped("A x. E y z. (lessh(x,y) & Q(z))"));
  CHECK(shaped("(A x. P(x) & A x. E y. succh(x,y))"));
  // exists under a multi-variable universal block
  CHECK(!shaped("A x y. E z. lessh(x,z)"));
  // not a conjunction of universally led conjuncts
  CHECK(!shaped("E x. P(x)"));
  CHECK(!shaped("(A x. P(x) | A x. Q(x))"));
  // nested quantifier below the exists row
  CHECK(!shaped("A x. E y. A z. lessh(y,z)"));

  auto sh = parseNormalFormShape(
      parseFormula("(A x. E y z. lessh(y,z) & A x y. !eq(x,y))", sig));
  REQUIRE(sh.has_value());
  CHECK(sh->conjuncts.size() == 2);
  CHECK(sh->conjuncts[0].forallExists);
  CHECK(sh->conjuncts[0].vars.size() == 3);
  CHECK(!sh->conjuncts[1].forallExists);
  CHECK(sh->widthValue == 3);
}

TEST_CASE("normal form rejects bad inputs") {
  Signature sig = wordSig1();
  CHECK_THROWS(toNormalForm(parseFormula("P(x)", sig), sig));  // free variable
  CHECK_THROWS(toNormalForm(parseFormula("E>=2 x. P(x)", sig), sig));
  // two free variables inside a block: not one-dimensional
  CHECK_THROWS(toNormalForm(
      parseFormula("E x y. E z. (lessh(x,z) & lessh(z,y))", sig), sig));
}

TEST_CASE("normal form shape, width, and fresh predicates") {
  Signature sig = wordSig2();
  FormulaPtr f =
      parseFormula("E x. (P(x) & A y. (!lessh(x,y) | Q(y)))", sig);
  NormalFormResult nf = toNormalForm(f, sig);
  CHECK(classify(nf.formula, nf.extendedSig).count(FragmentTag::NormalForm));
  CHECK(nf.widthValue <= width(f) + 1);
  CHECK(!nf.freshPredicates.empty());
  for (auto& [name, def] : nf.freshPredicates) {
    CHECK(nf.extendedSig.hasUnary(name));
    CHECK(!sig.hasUnary(name));
  }
}

TEST_CASE("canonical expansion matches the source formula") {
  Signature sig = wordSig2();
  const char* samples[] = {
      "E x. P(x)",
      "A x. (P(x) | Q(x))",
      "E x. (P(x) & A y. (!lessh(x,y) | Q(y)))",
      "A x. (!P(x) | E y. (succh(x,y) & Q(y)))",
      "(E x. P(x) & !E x. Q(x))",
      "E x. (P(x) & E y z. (lessh(x,y) & (lessh(y,z) & Q(z))))",
      "A x. (!Q(x) | E y. (lessh(y,x) & (P(y) & !E z. lessh(y,z))))",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    FormulaPtr f = parseFormula(text, sig);
    NormalFormResult nf = toNormalForm(f, sig);
    EnumCaps caps;
    caps.maxLen = 4;
    bool ok = true;
    enumerateWords(sig, caps, [&](const WordModel& w) {
      Structure base = flatten(w);
      Structure ext = expandCanonical(base, nf);
      if (evalFO(base, f) != evalFO(ext, nf.formula)) ok = false;
      return ok;
    });
    CHECK(ok);
  }
}

TEST_CASE("normal form is satisfiability-equivalent over the extended signature") {
  // Both directions within a small cap: the source formula has a model of
  // length <= 3 exactly when the normalized one does over the extended
  // signature.
  Signature sig = wordSig1();
  const char* samples[] = {
      "E x. P(x)",
      "E x. (P(x) & !P(x))",
      "(E x. P(x) & A x. !P(x))",
      "A x. (!P(x) | E y. (lessh(x,y) & P(y)))",
      "E x. (P(x) & !E y. lessh(y,x))",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    FormulaPtr f = parseFormula(text, sig);
    NormalFormResult nf = toNormalForm(f, sig);
    EnumCaps caps;
    caps.maxLen = 3;
    bool satSource = false, satTarget = false;
    enumerateWords(sig, caps, [&](const WordModel& w) {
      if (evalFO(flatten(w), f)) satSource = true;
      return !satSource;
    });
    enumerateWords(nf.extendedSig, caps, [&](const WordModel& w) {
      if (evalFO(flatten(w), nf.formula)) satTarget = true;
      return !satTarget;
    });
    CHECK(satSource == satTarget);
  }
}

TEST_CASE("normal form on tree formulas") {
  Signature sig = treeSig1();
  FormulaPtr f = parseFormula(
      "E x. (P(x) & A y. (!lessv(x,y) | !P(y)))", sig);
  NormalFormResult nf = toNormalForm(f, sig);
  CHECK(classify(nf.formula, nf.extendedSig).count(FragmentTag::NormalForm));
  EnumCaps caps;
  caps.maxDepth = 2;
  caps.maxBranch = 2;
  bool ok = true;
  enumerateTrees(sig, caps, [&](const TreeModel& t) {
    Structure base = flatten(t);
    if (evalFO(base, f) != evalFO(expandCanonical(base, nf), nf.formula))
      ok = false;
    return ok;
  });
  CHECK(ok);
}

TEST_CASE("diagram disjunction recognition") {
  Signature sig = wordSig1();
  // complete two-variable diagram plus its collapsed one-variable case
  FormulaPtr good = parseFormula(
      "E x y. ((!eq(x,y) & (P(x) & (!P(y) & (lessh(x,y) & (!lessh(y,x) & "
      "(!lessh(x,x) & !lessh(y,y))))))) | (P(x) & lessh(x,x)))",
      sig);
  CHECK(isDiagramDisjunction(good->kids[0], good->vars));
  // missing the lessh(y,x) literal
  FormulaPtr bad = parseFormula(
      "E x y. (!eq(x,y) & (P(x) & (!P(y) & (lessh(x,y) & (!lessh(x,x) & "
      "!lessh(y,y))))))",
      sig);
  CHECK(!isDiagramDisjunction(bad->kids[0], bad->vars));
  // not a disjunction of literal conjunctions
  FormulaPtr nonlit = parseFormula("E x y. (P(x) | !lessh(x,y))", sig);
  CHECK(!isDiagramDisjunction(nonlit->kids[0], nonlit->vars));
}

TEST_CASE("diagram normal form is equivalent and classified") {
  Signature sig = wordSig1();
  const char* samples[] = {
      "E x y. lessh(x,y)",
      "E x. (P(x) & E y. succh(x,y))",
      "A x. (P(x) | E y. lessh(y,x))",
      "E x y. (lessh(x,y) & (P(x) | !P(y)))",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    FormulaPtr f = parseFormula(text, sig);
    FormulaPtr d = toDiagramNormalForm(f, sig);
    CHECK(equivalentOnWords(f, d, sig, 3));
    CHECK(classify(d, sig).count(FragmentTag::DiagramNF));
  }
}

TEST_CASE("inconsistent matrix becomes a contradiction") {
  Signature sig = wordSig1();
  FormulaPtr f = parseFormula("E x. (P(x) & !P(x))", sig);
  FormulaPtr d = toDiagramNormalForm(f, sig);
  CHECK(equivalentOnWords(f, d, sig, 2));
  // no satisfying diagram exists, so the matrix is of the psi-and-not-psi form
  CHECK(d->kids[0]->kind == FKind::And);
}

TEST_CASE("rooted diagram form is equivalent on trees") {
  Signature sig = treeSig1();
  const char* samples[] = {
      "E x. P(x)",
      "E x y. lessv(x,y)",
      "E x. (P(x) & E y. succv(y,x))",
      "A x. (!P(x) | E y. lessv(y,x))",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    FormulaPtr f = parseFormula(text, sig);
    FormulaPtr r = toRootedDiagramForm(f, sig);
    CHECK(equivalentOnTrees(f, r, sig, 2, 2));
    CHECK(classify(r, sig).count(FragmentTag::DiagramNF));
  }
}

TEST_CASE("rooted form requires a tree signature") {
  Signature sig = wordSig1();
  CHECK_THROWS(toRootedDiagramForm(parseFormula("E x. P(x)", sig), sig));
}
