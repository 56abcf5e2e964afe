#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odfkit/semantics.hpp"
#include "odfkit/syntax.hpp"

using namespace odfkit;

static Signature wordSig() {
  Signature s;
  s.unary = {"P", "Q"};
  s.nav = {Rel::succh, Rel::lessh};
  return s;
}

static Signature treeSig() {
  Signature s;
  s.unary = {"P", "Q"};
  s.nav = {Rel::succh, Rel::lessh, Rel::succv, Rel::lessv};
  return s;
}

TEST_CASE("word evaluation") {
  Signature sig = wordSig();
  Structure s = flatten(WordModel{{{"P"}, {"Q"}, {"P", "Q"}}});

  CHECK(evalFO(s, parseFormula("E x. (P(x) & Q(x))", sig)));
  CHECK(!evalFO(s, parseFormula("A x. P(x)", sig)));
  CHECK(evalFO(s, parseFormula("A x. (P(x) | Q(x))", sig)));
  // every P position has a Q position strictly to the right? last is P itself
  CHECK(!evalFO(s, parseFormula("A x. (!P(x) | E y. (lessh(x,y) & Q(y)))", sig)));
  CHECK(evalFO(s, parseFormula("E x y. (succh(x,y) & (P(x) & Q(y)))", sig)));
  CHECK(!evalFO(s, parseFormula("E x y. (lessh(y,x) & (P(x) & !Q(x)))", sig)));
  // block quantification: two distinct witnesses
  CHECK(evalFO(s, parseFormula("E x y. (!eq(x,y) & (Q(x) & Q(y)))", sig)));
  CHECK(!evalFO(s, parseFormula(
      "E x y. (!eq(x,y) & ((P(x) & !Q(x)) & (P(y) & !Q(y))))", sig)));
}

TEST_CASE("free variable assignment") {
  Signature sig = wordSig();
  Structure s = flatten(WordModel{{{"P"}, {}}});
  FormulaPtr f = parseFormula("E y. (succh(x,y) & !P(y))", sig);
  CHECK(evalFO(s, f, {{"x", 0}}));
  CHECK(!evalFO(s, f, {{"x", 1}}));
  CHECK_THROWS(evalFO(s, f));
}

TEST_CASE("counting quantifiers") {
  Signature sig = wordSig();
  Structure s = flatten(WordModel{{{"P"}, {"P"}, {"Q"}}});
  CHECK(evalFO(s, parseFormula("E>=2 x. P(x)", sig)));
  CHECK(!evalFO(s, parseFormula("E>=3 x. P(x)", sig)));
  CHECK(evalFO(s, parseFormula("E<=2 x. P(x)", sig)));
  CHECK(!evalFO(s, parseFormula("E<=0 x. P(x)", sig)));
  CHECK(evalFO(s, parseFormula("E<=1 x. Q(x)", sig)));
  // nested: some position with at least two strictly greater positions
  CHECK(evalFO(s, parseFormula("E x. E>=2 y. lessh(x,y)", sig)));
  CHECK(!evalFO(s, parseFormula("E x. E>=3 y. lessh(x,y)", sig)));
}

TEST_CASE("tree evaluation") {
  Signature sig = treeSig();
  TreeModel t;
  t.nodes = {{}, {0}, {0, 0}, {1}};
  t.labels = {{"P"}, {}, {"P", "Q"}, {"Q"}};
  Structure s = flatten(t);
  CHECK(evalFO(s, parseFormula("E x y. (succv(x,y) & Q(y))", sig)));
  CHECK(evalFO(s, parseFormula("E x. (P(x) & !E y. succv(y,x))", sig)));
  // descendant but not child
  CHECK(evalFO(s, parseFormula("E x y. (lessv(x,y) & !succv(x,y))", sig)));
  // siblings
  CHECK(evalFO(s, parseFormula("E x y. (succh(x,y) & Q(y))", sig)));
  CHECK(!evalFO(s, parseFormula("E x y. (succh(x,y) & P(y))", sig)));
}

TEST_CASE("dataword and twoorder evaluation") {
  Signature dsig;
  dsig.unary = {"P"};
  dsig.nav = {Rel::succh, Rel::lessh, Rel::sim};
  DataWordModel d;
  d.word.positions = {{"P"}, {}, {"P"}};
  d.classes = {0, 1, 0};
  Structure s = flatten(d);
  CHECK(evalFO(s, parseFormula("E x y. (sim(x,y) & (lessh(x,y) & P(y)))", dsig)));
  CHECK(!evalFO(s, parseFormula("E x y. (sim(x,y) & succh(x,y))", dsig)));

  Signature tsig;
  tsig.unary = {"P"};
  tsig.nav = {Rel::succh, Rel::lessh, Rel::succh2};
  TwoOrderWord w;
  w.word.positions = {{"P"}, {}, {}};
  w.perm = {2, 0, 1};
  Structure s2 = flatten(w);
  CHECK(evalFO(s2, parseFormula("E x y. (succh2(x,y) & P(y))", tsig)));
  CHECK(evalFO(s2, parseFormula("E x y. (succh2(x,y) & lessh(y,x))", tsig)));
}

TEST_CASE("modal evaluation on trees") {
  Signature sig = treeSig();
  TreeModel t;
  t.nodes = {{}, {0}, {0, 0}, {1}};
  t.labels = {{"P"}, {}, {"P", "Q"}, {"Q"}};
  Structure s = flatten(t);
  CHECK(evalModal(s, parseModal("<down> <down> Q", sig), 0));
  CHECK(evalModal(s, parseModal("<down> Q", sig), 1));
  CHECK(!evalModal(s, parseModal("[down] <down+> Q", sig), 0));  // node 3 is a leaf
  CHECK(evalModal(s, parseModal("<up+> P", sig), 2));
  CHECK(!evalModal(s, parseModal("<up> Q", sig), 1));
  CHECK(evalModal(s, parseModal("<right> Q", sig), 1));
  CHECK(evalModal(s, parseModal("<left+> (P | !P)", sig), 3));
  CHECK(evalModal(s, parseModal("[up] [up] !Q", sig), 2));
}

TEST_CASE("modal evaluation on words") {
  Signature sig = wordSig();
  Structure s = flatten(WordModel{{{"P"}, {}, {"Q"}}});
  CHECK(evalModal(s, parseModal("<right+> Q", sig), 0));
  CHECK(!evalModal(s, parseModal("<right> Q", sig), 0));
  CHECK(evalModal(s, parseModal("<left> !P", sig), 2));
  CHECK_THROWS(evalModal(s, parseModal("<down> P", sig), 0));
}
