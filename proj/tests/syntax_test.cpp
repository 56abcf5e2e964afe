#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

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
  s.nav = {Rel::succv, Rel::lessv, Rel::succh, Rel::lessh};
  return s;
}

TEST_CASE("parsing basic formulas") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula("E y. (P(y) & succh(x,y))", sig);
  REQUIRE(f->kind == FKind::Exists);
  CHECK(f->vars == std::vector<std::string>{"y"});
  CHECK(freeVars(f) == std::set<std::string>{"x"});
  FormulaPtr body = f->kids[0];
  REQUIRE(body->kind == FKind::And);
  CHECK(body->kids[0]->kind == FKind::UnaryAtom);
  CHECK(body->kids[1]->kind == FKind::NavAtom);
  CHECK(body->kids[1]->rel == Rel::succh);
}

TEST_CASE("parsing counting quantifiers") {
  Signature sig = treeSig();
  FormulaPtr f = parseFormula("E>=3 y. lessv(x,y)", sig);
  REQUIRE(f->kind == FKind::CountGe);
  CHECK(f->threshold == 3);
  FormulaPtr g = parseFormula("E<=2 y. P(y)", sig);
  REQUIRE(g->kind == FKind::CountLe);
  CHECK(g->threshold == 2);
}

TEST_CASE("parse errors carry position and diagnosis") {
  Signature sig = wordSig();
  CHECK_THROWS_AS(parseFormula("P(x,", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("R(x)", sig), ParseError);  // undeclared
  CHECK_THROWS_AS(parseFormula("(P(x) & Q(x)", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("P(x) Q(x)", sig), ParseError);
}

TEST_CASE("implication and biconditional desugar") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula("(P(x) -> Q(x))", sig);
  CHECK(f->kind == FKind::Or);
  CHECK(f->kids[0]->kind == FKind::Not);
  FormulaPtr g = parseFormula("(P(x) <-> Q(x))", sig);
  CHECK(g->kind == FKind::And);
}

TEST_CASE("round trip print/parse is alpha-stable") {
  Signature sig = treeSig();
  const char* samples[] = {
      "E y. P(y)",
      "A x. (P(x) | !Q(x))",
      "E y1 y2. ((succh(x,y1) & lessh(y1,y2)) & P(y2))",
      "E>=3 y. lessv(x,y)",
      "A y0. E y1. (succv(y0,y1) & (eq(y0,y0) -> Q(y1)))",
      "!(true & false)",
  };
  for (const char* s : samples) {
    FormulaPtr f = parseFormula(s, sig);
    FormulaPtr g = parseFormula(printFormula(f), sig);
    CHECK(alphaEqual(f, g));
  }
}

TEST_CASE("shadowed variables are renamed apart") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula("E x. (P(x) & E x. Q(x))", sig);
  FormulaPtr inner = f->kids[0]->kids[1];
  REQUIRE(inner->kind == FKind::Exists);
  CHECK(inner->vars[0] != f->vars[0]);
}

TEST_CASE("width follows free-variable counts") {
  Signature sig = treeSig();
  CHECK(width(parseFormula("P(x)", sig)) == 1);
  CHECK(width(parseFormula("A y0. E y1 y2. (lessh(y0,y1) & lessh(y1,y2))", sig)) == 3);
  // Chain of m=4 positions: matrix has 4 free variables.
  CHECK(width(parseFormula(
            "E y1 y2 y3 y4. ((lessh(y1,y2) & lessh(y2,y3)) & lessh(y3,y4))",
            sig)) == 4);
}

TEST_CASE("classification of fragments") {
  Signature sig = treeSig();
  auto tags = [&](const char* s) { return classify(parseFormula(s, sig), sig); };

  // Quantifier block leaving one variable free: one-dimensional.
  auto t1 = tags("E y1 y2. ((lessh(x,y1) & lessh(y1,y2)) & P(y2))");
  CHECK(t1.count(FragmentTag::ODF));
  CHECK(!t1.count(FragmentTag::FO2));

  // Block leaving two variables free: not one-dimensional.
  auto t2 = tags("E z. (lessh(x,z) & lessh(z,y))");
  CHECK(!t2.count(FragmentTag::ODF));

  // Two-variable formula is also one-dimensional.
  auto t3 = tags("E y. (succh(x,y) & E x. (succh(y,x) & P(x)))");
  CHECK(t3.count(FragmentTag::FO2));
  CHECK(t3.count(FragmentTag::ODF));
  CHECK(t3.count(FragmentTag::C2));

  // Counting: C2 but not FO2/ODF.
  auto t4 = tags("E>=3 y. lessv(x,y)");
  CHECK(t4.count(FragmentTag::C2));
  CHECK(!t4.count(FragmentTag::FO2));
  CHECK(!t4.count(FragmentTag::ODF));

  // Guarded: GF2 implies FO2.
  auto t5 = tags("E y. (succv(x,y) & P(y))");
  CHECK(t5.count(FragmentTag::GF2));
  CHECK(t5.count(FragmentTag::FO2));
  auto t6 = tags("A y. (!succv(x,y) | P(y))");
  CHECK(t6.count(FragmentTag::GF2));

  // Binary negation under conjunction: not UNFO.
  auto t7 = tags("E y. (!succh(x,y) & P(y))");
  CHECK(!t7.count(FragmentTag::UNFO));
  auto t8 = tags("E y. (succh(x,y) & !P(y))");
  CHECK(t8.count(FragmentTag::UNFO));

  // Normal-form shape.
  auto t9 = tags("(A y0. E y1. (succh(y0,y1) & P(y1)) & A x1 x2. (!lessh(x1,x2) | !Q(x1)))");
  CHECK(t9.count(FragmentTag::NormalForm));
  auto t10 = tags("E y. P(y)");
  CHECK(!t10.count(FragmentTag::NormalForm));
}

TEST_CASE("negation normal form") {
  Signature sig = wordSig();
  FormulaPtr f = parseFormula("!(P(x) | Q(x))", sig);
  FormulaPtr n = pushNegationsInward(f);
  CHECK(n->kind == FKind::And);
  CHECK(n->kids[0]->kind == FKind::Not);

  FormulaPtr g = parseFormula("!A y1 y2. (P(y1) | Q(y2))", sig);
  FormulaPtr gn = pushNegationsInward(g);
  CHECK(gn->kind == FKind::Exists);
  CHECK(gn->kids[0]->kind == FKind::And);

  // Counting duals.
  FormulaPtr c = pushNegationsInward(parseFormula("!E>=3 y. P(y)", sig));
  CHECK(c->kind == FKind::CountLe);
  CHECK(c->threshold == 2);
  FormulaPtr d = pushNegationsInward(parseFormula("!E<=1 y. P(y)", sig));
  CHECK(d->kind == FKind::CountGe);
  CHECK(d->threshold == 2);

  // Free variables preserved.
  FormulaPtr h = parseFormula("!E y. (succh(x,y) & !P(y))", sig);
  CHECK(freeVars(pushNegationsInward(h)) == freeVars(h));
}

TEST_CASE("modal parsing and printing") {
  Signature sig = treeSig();
  ModalPtr m = parseModal("<up>(P & <right+>(Q | <down+>P))", sig);
  REQUIRE(m->kind == MKind::Diamond);
  CHECK(m->dir == Dir::up);
  ModalPtr m2 = parseModal(printModal(m), sig);
  CHECK(modalEqual(m, m2));
  ModalPtr b = parseModal("[down+]!P", sig);
  CHECK(b->kind == MKind::Box);
  CHECK(b->dir == Dir::downPlus);
}
