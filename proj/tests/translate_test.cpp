#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "odfkit/semantics.hpp"
#include "odfkit/syntax.hpp"
#include "odfkit/translate.hpp"

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

static Signature vertSig(std::vector<std::string> preds = {"P"}) {
  Signature s;
  s.unary = std::move(preds);
  s.nav = {Rel::succv, Rel::lessv};
  return s;
}

// Pointwise agreement of two formulas with free variable "x" (or sentences)
// on every enumerated word up to maxLen.
static void checkAgreeWords(const FormulaPtr& f, const FormulaPtr& g,
                            const Signature& sig, size_t maxLen) {
  EnumCaps caps;
  caps.maxLen = maxLen;
  enumerateWords(sig, caps, [&](const WordModel& w) {
    Structure s = flatten(w);
    for (int i = 0; i < (int)s.size(); ++i) {
      Assignment a{{"x", i}};
      if (evalFO(s, f, a) != evalFO(s, g, a)) {
        CAPTURE(printFormula(f));
        CAPTURE(printFormula(g));
        CAPTURE(serializeWord(w));
        CAPTURE(i);
        REQUIRE(false);
      }
    }
    return true;
  });
}

// As above on trees, stopping after `budget` trees.
static void checkAgreeTrees(const FormulaPtr& f, const FormulaPtr& g,
                            const Signature& sig, size_t maxDepth,
                            size_t budget) {
  EnumCaps caps;
  caps.maxDepth = maxDepth;
  caps.maxBranch = 2;
  size_t seen = 0;
  enumerateTrees(sig, caps, [&](const TreeModel& t) {
    Structure s = flatten(t);
    for (int i = 0; i < (int)s.size(); ++i) {
      Assignment a{{"x", i}};
      if (evalFO(s, f, a) != evalFO(s, g, a)) {
        CAPTURE(printFormula(f));
        CAPTURE(printFormula(g));
        CAPTURE(serializeTree(t));
        CAPTURE(i);
        REQUIRE(false);
      }
    }
    return ++seen < budget;
  });
}

// ----- standard translation -----

TEST_CASE("standard translation golden shape") {
  Signature sig = treeSig({"P", "Q", "R"});
  ModalPtr m = parseModal("<up>(P & <right+>(Q | <down+>R))", sig);
  FormulaPtr got = standardTranslation(m, "x");
  FormulaPtr expect = fExists(
      {"x_st"},
      fAnd(fNav(Rel::succv, "x_st", "x"),
           fAnd(fAtom("P", "x_st"),
                fExists({"x"},
                        fAnd(fNav(Rel::lessh, "x_st", "x"),
                             fOr(fAtom("Q", "x"),
                                 fExists({"x_st"},
                                         fAnd(fNav(Rel::lessv, "x", "x_st"),
                                              fAtom("R", "x_st")))))))));
  CHECK(astEqual(got, expect));
  auto tags = classify(got, sig);
  CHECK(tags.count(FragmentTag::GF2));
  CHECK(tags.count(FragmentTag::FO2));
}

TEST_CASE("standard translation mirrors modal evaluation on trees") {
  Signature sig = treeSig({"P", "Q"});
  std::vector<std::string> modals = {
      "<down>P",
      "[down](P | <up>Q)",
      "(<up+>(P & [left]Q) | !<right>P)",
      "<down+>(Q & <up>(P & <down>!Q))",
      "[up+](P | <down+>Q)",
  };
  EnumCaps caps;
  caps.maxDepth = 2;
  caps.maxBranch = 2;
  for (auto& text : modals) {
    ModalPtr m = parseModal(text, sig);
    FormulaPtr f = standardTranslation(m, "x");
    size_t seen = 0;
    enumerateTrees(sig, caps, [&](const TreeModel& t) {
      Structure s = flatten(t);
      for (int i = 0; i < (int)s.size(); ++i) {
        Assignment a{{"x", i}};
        if (evalModal(s, m, i) != evalFO(s, f, a)) {
          CAPTURE(text);
          CAPTURE(serializeTree(t));
          CAPTURE(i);
          REQUIRE(false);
        }
      }
      return ++seen < 300;
    });
  }
}

TEST_CASE("standard translation mirrors modal evaluation on words") {
  Signature sig = wordSig({"P", "Q"});
  std::vector<std::string> modals = {
      "<right>P",
      "[right+](P | <left>Q)",
      "(<left+>Q & !<right+>(P & Q))",
  };
  EnumCaps caps;
  caps.maxLen = 4;
  for (auto& text : modals) {
    ModalPtr m = parseModal(text, sig);
    FormulaPtr f = standardTranslation(m, "x");
    enumerateWords(sig, caps, [&](const WordModel& w) {
      Structure s = flatten(w);
      for (int i = 0; i < (int)s.size(); ++i) {
        Assignment a{{"x", i}};
        REQUIRE(evalModal(s, m, i) == evalFO(s, f, a));
      }
      return true;
    });
  }
}

// ----- counting expansion -----

TEST_CASE("counting quantifiers expand to distinct-witness blocks") {
  Signature sig = wordSig();
  FormulaPtr ge1 = c2ToOdf(parseFormula("E>=1 y. P(y)", sig));
  CHECK(alphaEqual(ge1, parseFormula("E y. P(y)", sig)));

  FormulaPtr ge2 = c2ToOdf(parseFormula("E>=2 y. P(y)", sig));
  FormulaPtr expect2 =
      fExists({"a", "b"}, fConj({fNot(fEq("a", "b")), fAtom("P", "a"),
                                 fAtom("P", "b")}));
  CHECK(alphaEqual(ge2, expect2));
  CHECK(classify(ge2, sig).count(FragmentTag::ODF));

  FormulaPtr le0 = c2ToOdf(parseFormula("E<=0 y. P(y)", sig));
  CHECK(alphaEqual(le0, fNot(parseFormula("E y. P(y)", sig))));

  for (auto& text : {"E>=2 y. P(y)", "E<=1 y. P(y)",
                     "E>=2 y. (P(y) & E>=2 x. lessh(y,x))"}) {
    FormulaPtr f = parseFormula(text, sig);
    checkAgreeWords(f, c2ToOdf(f), sig, 4);
  }
}

// ----- negated order atoms -----

TEST_CASE("negated word atoms rewrite to positive case splits") {
  Signature sig = wordSig();
  FormulaPtr f1 = parseFormula("E y. (P(y) & !lessh(x,y))", sig);
  FormulaPtr e1 = fExists({"y"}, fAnd(fAtom("P", "y"),
                                      fOr(fNav(Rel::lessh, "y", "x"),
                                          fEq("x", "y"))));
  CHECK(alphaEqual(odfToUnfoWord(f1, sig), e1));

  FormulaPtr f2 = parseFormula("E y. (P(y) & !succh(x,y))", sig);
  FormulaPtr e2 = fExists(
      {"y"},
      fAnd(fAtom("P", "y"),
           fDisj({fNav(Rel::lessh, "y", "x"), fEq("x", "y"),
                  fExists({"z"}, fAnd(fNav(Rel::succh, "x", "z"),
                                      fNav(Rel::lessh, "z", "y")))})));
  CHECK(alphaEqual(odfToUnfoWord(f2, sig), e2));

  FormulaPtr f3 = parseFormula("E y. (P(y) & !eq(x,y))", sig);
  FormulaPtr e3 = fExists({"y"}, fAnd(fAtom("P", "y"),
                                      fOr(fNav(Rel::lessh, "x", "y"),
                                          fNav(Rel::lessh, "y", "x"))));
  CHECK(alphaEqual(odfToUnfoWord(f3, sig), e3));

  for (auto& g : {f1, f2, f3}) {
    FormulaPtr u = odfToUnfoWord(g, sig);
    CHECK(classify(u, sig).count(FragmentTag::UNFO));
    checkAgreeWords(g, u, sig, 4);
  }
  // the successor rewrite introduces a two-free-variable helper block, so its
  // output is UNFO but no longer one-dimensional
  CHECK(classify(odfToUnfoWord(f1, sig), sig).count(FragmentTag::ODF));
  CHECK(classify(odfToUnfoWord(f3, sig), sig).count(FragmentTag::ODF));
  CHECK(!classify(odfToUnfoWord(f2, sig), sig).count(FragmentTag::ODF));
}

TEST_CASE("negation-free existential input passes through unchanged") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula("E y. (lessh(x,y) & (P(y) | E z. succh(y,z)))", sig);
  CHECK(astEqual(odfToUnfoWord(f, sig), f));
}

TEST_CASE("negated tree atoms keep their meaning") {
  Signature sig = treeSig();
  std::vector<std::string> texts = {
      "E y. (!lessv(x,y) & P(y))", "E y. (!succv(x,y) & P(y))",
      "E y. (!lessh(x,y) & P(y))", "E y. (!succh(x,y) & P(y))",
      "E y. (!eq(x,y) & P(y))",    "A y. (lessh(y,x) | P(y))",
  };
  for (auto& text : texts) {
    FormulaPtr f = parseFormula(text, sig);
    FormulaPtr u = odfToUnfoXmlTree(f, sig);
    CHECK(classify(u, sig).count(FragmentTag::UNFO));
    checkAgreeTrees(f, u, sig, 2, 400);
  }
}

// ----- scheme enumerations -----

TEST_CASE("ordering scheme counts") {
  CHECK(enumerateOrderingSchemes(0).size() == 1);
  // two variables: together, or apart in either order with two gap kinds
  CHECK(enumerateOrderingSchemes(1).size() == 5);
  // 1 + S(3,2)*2!*2 + 3!*4
  CHECK(enumerateOrderingSchemes(2).size() == 37);
  CHECK(enumerateTreeOrderingSchemes(0).size() == 1);
  // merged, or two classes: both roots, or an edge of either orientation
  // and either kind
  CHECK(enumerateTreeOrderingSchemes(1).size() == 6);
}

// ----- word two-variable translation -----

namespace {

FormulaPtr randomOpen(std::mt19937& rng, const Signature& sig,
                      const std::vector<Rel>& rels) {
  std::vector<std::string> scope{"x"};
  int next = 0;
  std::function<FormulaPtr(unsigned)> go = [&](unsigned depth) -> FormulaPtr {
    unsigned roll = rng() % 10;
    if (depth == 0 || roll < 4) {
      const std::string& v = scope[rng() % scope.size()];
      FormulaPtr atom;
      if (rng() % 3 == 0 && scope.size() >= 2) {
        const std::string& u = scope[rng() % scope.size()];
        atom = rng() % 5 == 0 ? fEq(u, v) : fNav(rels[rng() % rels.size()], u, v);
      } else {
        atom = fAtom(sig.unary[rng() % sig.unary.size()], v);
      }
      return rng() & 1 ? fNot(atom) : atom;
    }
    if (roll < 7) {
      FormulaPtr a = go(depth - 1), b = go(depth - 1);
      return rng() & 1 ? fAnd(a, b) : fOr(a, b);
    }
    std::vector<std::string> vars;
    size_t n = 1 + rng() % 2;
    for (size_t i = 0; i < n; ++i)
      vars.push_back("w" + std::to_string(next++));
    for (auto& v : vars) scope.push_back(v);
    FormulaPtr body = go(depth - 1);
    scope.resize(scope.size() - vars.size());
    return rng() & 1 ? fExists(vars, body) : fForall(vars, body);
  };
  return go(3);
}

}  // namespace

TEST_CASE("word two-variable translation agrees pointwise") {
  Signature sig = wordSig();
  std::vector<Rel> rels{Rel::succh, Rel::lessh};
  std::vector<FormulaPtr> inputs = {
      parseFormula("E y z. ((lessh(x,y) & lessh(y,z)) & (P(z) & !P(y)))", sig),
      parseFormula("E y z. ((succh(y,x) & !lessh(z,y)) & !eq(y,z))", sig),
      parseFormula("E y. (lessh(x,y) & E z. (succh(y,z) & P(z)))", sig),
      parseFormula("A y z. ((lessh(x,y) & succh(y,z)) -> P(z))", sig),
      parseFormula("E y z w. ((lessh(y,z) & lessh(z,w)) & ((P(y) & !P(z)) & P(w)))",
                   sig),
  };
  std::mt19937 rng(17);
  while (inputs.size() < 35) {
    FormulaPtr f = randomOpen(rng, sig, rels);
    if (!classify(f, sig).count(FragmentTag::ODF)) continue;
    if (quantifierFree(f)) continue;
    inputs.push_back(f);
  }
  size_t inSize = 0, outSize = 0;
  for (auto& f : inputs) {
    FormulaPtr g = odfToFo2Word(f, sig);
    CHECK(classify(g, sig).count(FragmentTag::FO2));
    checkAgreeWords(f, g, sig, 4);
    inSize += printFormula(f).size();
    outSize += printFormula(g).size();
  }
  MESSAGE("word FO2 blow-up: ", inSize, " -> ", outSize, " chars (",
          (double)outSize / (double)inSize, "x)");
}

// ----- guarded to UNFO -----

TEST_CASE("descendant guards split into child and two-step cases") {
  Signature sig = vertSig();
  FormulaPtr f = parseFormula("E y. (lessv(x,y) & P(y))", sig);
  FormulaPtr got = gf2ToUnfoUnordered(f, sig);
  FormulaPtr expect =
      fOr(fExists({"y"}, fAnd(fNav(Rel::succv, "x", "y"), fAtom("P", "y"))),
          fExists({"y", "z"}, fConj({fNav(Rel::succv, "x", "z"),
                                     fNav(Rel::lessv, "z", "y"),
                                     fAtom("P", "y")})));
  CHECK(alphaEqual(got, expect));
}

TEST_CASE("guarded two-variable translation agrees pointwise") {
  Signature sig = vertSig();
  std::vector<std::string> texts = {
      "A y. (!succv(x,y) | P(y))",
      "A y. (!lessv(x,y) | P(y))",
      "E y. (succv(y,x) & !P(y))",
      "E y. (lessv(x,y) & (P(y) & A z. (!succv(y,z) | !P(z))))",
      "A y. (!lessv(y,x) | E z. (succv(y,z) & !P(z)))",
      "(P(x) & !E y. (lessv(x,y) & eq(x,y)))",
  };
  for (auto& text : texts) {
    FormulaPtr f = parseFormula(text, sig);
    REQUIRE(classify(f, sig).count(FragmentTag::GF2));
    FormulaPtr u = gf2ToUnfoUnordered(f, sig);
    CHECK(classify(u, sig).count(FragmentTag::UNFO));
    checkAgreeTrees(f, u, sig, 2, 400);
  }
}

// ----- CoreXPath -----

TEST_CASE("scheme traversal golden") {
  // seven singleton classes: a focus chain with a sibling branch and a
  // detached component
  TreeOrderingScheme sch;
  sch.classes = {
      {{0}, 3, false},  // focus, proper descendant of class 3
      {{1}, 0, true},   // child of the focus
      {{2}, 3, true},   // sibling branch at the top
      {{3}, -1, false},
      {{4}, 2, true},
      {{5}, -1, false},  // detached component
      {{6}, 5, true},
  };
  std::vector<ModalPtr> bundles = {
      mConj({mProp("P"), mNot(mProp("Q")), mProp("nu0")}),
      mNot(mProp("P")),
      mConj({mNot(mProp("Q")), mProp("nu2")}),
      mConj({mProp("Q"), mNot(mProp("R"))}),
      mProp("R"),
      mNot(mProp("R")),
      mProp("Q"),
  };
  ModalPtr got = treeSchemeTraversal(sch, 0, bundles);
  ModalPtr expect = mConj(
      {bundles[0], mDiamond(Dir::down, bundles[1]),
       mDiamond(Dir::upPlus,
                mConj({bundles[3],
                       mDiamond(Dir::down,
                                mConj({bundles[2],
                                       mDiamond(Dir::down, bundles[4])}))})),
       mDiamond(Dir::upPlus,
                mDiamond(Dir::downPlus,
                         mConj({bundles[5], mDiamond(Dir::down, bundles[6])})))});
  CHECK(modalEqual(got, expect));
}

TEST_CASE("xpath translation mirrors formula evaluation") {
  Signature sig = vertSig({"P", "Q"});
  std::vector<std::string> texts = {
      "E y. (lessv(x,y) & P(y))",
      "E y. (succv(y,x) & !P(y))",
      "!E y. (lessv(x,y) & !P(y))",
      "E y z. ((lessv(x,y) & lessv(y,z)) & (P(z) & !E w. (succv(z,w) & true)))",
      "E y. (P(y) & !E z. (lessv(y,z) & Q(z)))",
      "E y z. ((lessv(y,x) & lessv(y,z)) & (Q(z) & P(y)))",
      "E y z. ((P(y) & Q(z)) & eq(y,z))",
  };
  size_t inSize = 0, outSize = 0;
  for (auto& text : texts) {
    FormulaPtr f = parseFormula(text, sig);
    ModalPtr m = unfoToCoreXPathUnordered(f, sig);
    EnumCaps caps;
    caps.maxDepth = 2;
    caps.maxBranch = 2;
    size_t seen = 0;
    enumerateTrees(sig, caps, [&](const TreeModel& t) {
      Structure s = flatten(t);
      for (int i = 0; i < (int)s.size(); ++i) {
        Assignment a{{"x", i}};
        if (evalFO(s, f, a) != evalModal(s, m, i)) {
          CAPTURE(text);
          CAPTURE(serializeTree(t));
          CAPTURE(i);
          REQUIRE(false);
        }
      }
      return ++seen < 250;
    });
    inSize += printFormula(f).size();
    outSize += printModal(m).size();
  }
  MESSAGE("xpath blow-up: ", inSize, " -> ", outSize, " chars");
}

// ----- unordered-tree counting translation -----

TEST_CASE("unordered tree counting translation agrees pointwise") {
  Signature sig = vertSig();
  std::vector<FormulaPtr> inputs = {
      parseFormula("E y. (lessv(x,y) & P(y))", sig),
      parseFormula("E y. (succv(y,x) & !P(y))", sig),
      parseFormula("E y z. ((lessv(x,y) & lessv(x,z)) & (!eq(y,z) & P(y)))",
                   sig),
      parseFormula(
          "E y. ((!lessv(x,y) & !lessv(y,x)) & (!eq(x,y) & P(y)))", sig),
      parseFormula("E y z. ((lessv(y,z) & P(y)) & !P(z))", sig),
      parseFormula("A y. (!lessv(x,y) | P(y))", sig),
  };
  std::vector<Rel> rels{Rel::succv, Rel::lessv};
  std::mt19937 rng(29);
  while (inputs.size() < 16) {
    FormulaPtr f = randomOpen(rng, sig, rels);
    if (!classify(f, sig).count(FragmentTag::ODF)) continue;
    if (quantifierFree(f)) continue;
    inputs.push_back(f);
  }
  size_t inSize = 0, outSize = 0;
  for (auto& f : inputs) {
    FormulaPtr g;
    try {
      g = odfToC2Unordered(f, sig);
    } catch (const std::exception&) {
      continue;  // width or vocabulary cap on a random input
    }
    CHECK(classify(g, sig).count(FragmentTag::C2));
    checkAgreeTrees(f, g, sig, 2, 120);
    FormulaPtr h = c2ToOdf(g);
    CHECK(classify(h, sig).count(FragmentTag::ODF));
    inSize += printFormula(f).size();
    outSize += printFormula(g).size();
  }
  MESSAGE("tree C2 blow-up: ", inSize, " -> ", outSize, " chars");
}

TEST_CASE("counting translation example on deeper trees") {
  Signature sig = vertSig();
  FormulaPtr f = parseFormula("E y. (lessv(x,y) & P(y))", sig);
  FormulaPtr g = odfToC2Unordered(f, sig);
  checkAgreeTrees(f, g, sig, 3, 150);
}

// ----- input validation -----

TEST_CASE("translations validate their inputs") {
  Signature wsig = wordSig();
  Signature tsig = treeSig();
  CHECK_THROWS(odfToFo2Word(parseFormula("E y. lessv(x,y)", tsig), tsig));
  CHECK_THROWS(odfToFo2Word(parseFormula("lessh(x,y)", wsig), wsig));
  CHECK_THROWS(odfToFo2Word(
      parseFormula("E y1 y2 y3 y4 y5. ((((lessh(y1,y2) & lessh(y2,y3)) &"
                   " lessh(y3,y4)) & lessh(y4,y5)) & P(y1))",
                   wsig),
      wsig));
  // inner block leaves two variables free: not one-dimensional
  CHECK_THROWS(odfToUnfoWord(
      parseFormula("E y. (lessh(x,y) & E z. (lessh(x,z) & lessh(z,y)))", wsig),
      wsig));
  CHECK_THROWS(unfoToCoreXPathUnordered(
      parseFormula("A y. (!lessv(x,y) | P(y))", tsig), tsig));
  CHECK_THROWS(gf2ToUnfoUnordered(
      parseFormula("E y. (P(y) | lessv(x,y))", tsig), tsig));
  CHECK_THROWS(odfToC2Unordered(parseFormula("E y. lessh(x,y)", tsig), tsig));
}
