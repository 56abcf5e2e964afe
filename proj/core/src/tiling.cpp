#include <json.hpp>
#include <set>
#include <stdexcept>

#include "odfkit/reductions.hpp"

namespace odfkit {

using nlohmann::json;

bool TilingSystem::valid() const {
  if (colours.empty()) return false;
  std::set<std::string> cs(colours.begin(), colours.end());
  if (cs.size() != colours.size()) return false;
  if (!cs.count(c0) || !cs.count(c1)) return false;
  for (auto& [a, b] : hor)
    if (!cs.count(a) || !cs.count(b)) return false;
  for (auto& [a, b] : ver)
    if (!cs.count(a) || !cs.count(b)) return false;
  return true;
}

TilingSystem tilingSystemFromJson(const std::string& text) {
  json j = json::parse(text);
  TilingSystem t;
  for (auto& c : j.at("colours")) t.colours.push_back(c.get<std::string>());
  t.c0 = j.at("c0").get<std::string>();
  t.c1 = j.at("c1").get<std::string>();
  for (auto& p : j.at("hor"))
    t.hor.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  for (auto& p : j.at("ver"))
    t.ver.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  if (!t.valid()) throw std::runtime_error("invalid tiling system");
  return t;
}

std::string tilingSystemToJson(const TilingSystem& t) {
  json j;
  j["colours"] = t.colours;
  j["c0"] = t.c0;
  j["c1"] = t.c1;
  json h = json::array(), v = json::array();
  for (auto& [a, b] : t.hor) h.push_back({a, b});
  for (auto& [a, b] : t.ver) v.push_back({a, b});
  j["hor"] = h;
  j["ver"] = v;
  return j.dump();
}

void validateTiling(const TilingSystem& t, const GridTiling& f, size_t rows,
                    size_t cols) {
  if (!t.valid()) throw std::runtime_error("invalid tiling system");
  if (rows < 2 || rows % 2 != 0)
    throw std::runtime_error("the number of rows must be even and positive");
  if (cols % 2 != 1)
    throw std::runtime_error("the number of columns must be odd");
  if (f.size() != rows) throw std::runtime_error("tiling has the wrong shape");
  for (auto& row : f)
    if (row.size() != cols)
      throw std::runtime_error("tiling has the wrong shape");
  std::set<std::string> cs(t.colours.begin(), t.colours.end());
  for (auto& row : f)
    for (auto& c : row)
      if (!cs.count(c)) throw std::runtime_error("unknown colour in tiling");
  if (f[0][0] != t.c0 || f[rows - 1][cols - 1] != t.c1)
    throw std::runtime_error("corner colours do not match");
  std::set<std::pair<std::string, std::string>> hor(t.hor.begin(), t.hor.end()),
      ver(t.ver.begin(), t.ver.end());
  for (size_t r = 0; r < rows; ++r)
    for (size_t j = 0; j + 1 < cols; ++j)
      if (!hor.count({f[r][j], f[r][j + 1]}))
        throw std::runtime_error("horizontal constraint violated");
  for (size_t r = 0; r + 1 < rows; ++r)
    for (size_t j = 0; j < cols; ++j)
      if (!ver.count({f[r][j], f[r + 1][j]}))
        throw std::runtime_error("vertical constraint violated");
}

namespace {

std::string colourPred(const std::string& c) { return "P_" + c; }

FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return fOr(fNot(a), b); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  return fAnd(imp(a, b), imp(b, a));
}

FormulaPtr pr(const char* p, const char* v) { return fAtom(p, v); }

// x_1 .. x_k agree on the even-column predicate
FormulaPtr sameColumn(const std::vector<const char*>& vs) {
  std::vector<FormulaPtr> cs;
  for (size_t i = 0; i + 1 < vs.size(); ++i)
    cs.push_back(iff(pr("Ec", vs[i]), pr("Ec", vs[i + 1])));
  return fConj(cs);
}

FormulaPtr diffColumn(const char* a, const char* b) {
  return iff(pr("Ec", a), fNot(pr("Ec", b)));
}

// adjacency constraints: no forbidden colour pair on (x, y)
FormulaPtr respects(
    const TilingSystem& t,
    const std::vector<std::pair<std::string, std::string>>& allowed,
    const char* x, const char* y) {
  std::set<std::pair<std::string, std::string>> ok(allowed.begin(),
                                                   allowed.end());
  std::vector<FormulaPtr> cs;
  for (auto& c : t.colours)
    for (auto& d : t.colours)
      if (!ok.count({c, d}))
        cs.push_back(fNot(fAnd(fAtom(colourPred(c), x),
                               fAtom(colourPred(d), y))));
  return fConj(cs);
}

FormulaPtr horOk(const TilingSystem& t, const char* x, const char* y) {
  return respects(t, t.hor, x, y);
}
FormulaPtr verOk(const TilingSystem& t, const char* x, const char* y) {
  return respects(t, t.ver, x, y);
}

FormulaPtr succ1(const char* a, const char* b) {
  return fNav(Rel::succh, a, b);
}
FormulaPtr sim(const char* a, const char* b) { return fNav(Rel::sim, a, b); }

// exactly one colour per element
FormulaPtr colourPartition(const TilingSystem& t) {
  std::vector<FormulaPtr> one;
  for (auto& c : t.colours) one.push_back(fAtom(colourPred(c), "x"));
  std::vector<FormulaPtr> cs{fDisj(one)};
  for (size_t i = 0; i < t.colours.size(); ++i)
    for (size_t j = i + 1; j < t.colours.size(); ++j)
      cs.push_back(fNot(fAnd(fAtom(colourPred(t.colours[i]), "x"),
                             fAtom(colourPred(t.colours[j]), "x"))));
  return fForall({"x"}, fConj(cs));
}

FormulaPtr cornerColours(const TilingSystem& t) {
  FormulaPtr noPred = fNot(fExists({"y"}, succ1("y", "x")));
  FormulaPtr noSucc = fNot(fExists({"y"}, succ1("x", "y")));
  return fAnd(fForall({"x"}, imp(noPred, fAtom(colourPred(t.c0), "x"))),
              fForall({"x"}, imp(noSucc, fAtom(colourPred(t.c1), "x"))));
}

// the word-successor steps respect the grid predicates
FormulaPtr gridStep(bool twoOrders) {
  FormulaPtr withinEven =
      imp(fAnd(pr("Ec", "x"), pr("Ec", "y")),
          fConj({fNot(pr("B", "y")), fNot(pr("T", "x")),
                 iff(pr("Er", "x"), fNot(pr("Er", "y")))}));
  FormulaPtr topTurn =
      imp(fAnd(pr("Ec", "x"), fNot(pr("Ec", "y"))),
          fConj({pr("T", "x"), pr("T", "y"), fNot(pr("B", "x")),
                 fNot(pr("B", "y")), fNot(pr("Er", "x")),
                 fNot(pr("Er", "y"))}));
  FormulaPtr bottomTurn =
      imp(fAnd(fNot(pr("Ec", "x")), pr("Ec", "y")),
          fConj({pr("B", "x"), pr("B", "y"), fNot(pr("T", "x")),
                 fNot(pr("T", "y")), pr("Er", "x"), pr("Er", "y")}));
  FormulaPtr withinOdd =
      imp(fAnd(fNot(pr("Ec", "x")), fNot(pr("Ec", "y"))),
          fConj({fNot(pr("B", "x")), fNot(pr("T", "y")),
                 iff(pr("Er", "x"), fNot(pr("Er", "y")))}));
  std::vector<FormulaPtr> cs{withinEven, topTurn, bottomTurn, withinOdd};
  if (twoOrders) {
    cs.push_back(imp(fAnd(pr("Ec", "x"), pr("Ec", "y")),
                     fAnd(iff(pr("L", "x"), pr("L", "y")),
                          iff(pr("R", "x"), pr("R", "y")))));
    cs.push_back(imp(fAnd(fNot(pr("Ec", "x")), fNot(pr("Ec", "y"))),
                     fAnd(iff(pr("L", "x"), pr("L", "y")),
                          iff(pr("R", "x"), pr("R", "y")))));
    cs.push_back(imp(diffColumn("x", "y"),
                     fAnd(fNot(pr("R", "x")), fNot(pr("L", "y")))));
  }
  return fForall({"x", "y"}, imp(succ1("x", "y"), fConj(cs)));
}

FormulaPtr cornerExistence(bool twoOrders) {
  std::vector<FormulaPtr> low{pr("B", "x"), fNot(pr("T", "x")), pr("Ec", "x"),
                              pr("Er", "x"),
                              fNot(fExists({"y"}, succ1("y", "x")))};
  std::vector<FormulaPtr> high{pr("T", "x"), fNot(pr("B", "x")), pr("Ec", "x"),
                               fNot(pr("Er", "x")),
                               fNot(fExists({"y"}, succ1("x", "y")))};
  if (twoOrders) {
    low.push_back(pr("L", "x"));
    high.push_back(pr("R", "x"));
  }
  return fAnd(fExists({"x"}, fConj(low)), fExists({"x"}, fConj(high)));
}

// vertical neighbours within a column respect the vertical constraints
FormulaPtr verticalAdjacency(const TilingSystem& t) {
  FormulaPtr evenUp = fConj({pr("Ec", "x"), pr("Ec", "y"), succ1("x", "y")});
  FormulaPtr oddDown =
      fConj({fNot(pr("Ec", "x")), fNot(pr("Ec", "y")), succ1("y", "x")});
  return fForall({"x", "y"}, imp(fOr(evenUp, oddDown), verOk(t, "x", "y")));
}

}  // namespace

Signature tilingDataWordSignature(const TilingSystem& t) {
  Signature s;
  s.unary = {"B", "T", "Ec", "Er"};
  for (auto& c : t.colours) s.unary.push_back(colourPred(c));
  s.nav = {Rel::succh, Rel::lessh, Rel::sim};
  return s;
}

FormulaPtr encodeTilingDataWord(const TilingSystem& t) {
  if (!t.valid()) throw std::runtime_error("invalid tiling system");
  std::vector<FormulaPtr> cs;
  cs.push_back(cornerExistence(false));
  cs.push_back(gridStep(false));
  // turn corners of neighbouring columns are linked
  cs.push_back(fForall(
      {"x", "y", "z", "t"},
      imp(fConj({succ1("x", "y"), succ1("y", "z"), succ1("z", "t"),
                 pr("T", "y"), pr("T", "z")}),
          sim("x", "t"))));
  cs.push_back(fForall(
      {"x", "y", "z", "t"},
      imp(fConj({succ1("x", "y"), succ1("y", "z"), succ1("z", "t"),
                 pr("B", "y"), pr("B", "z")}),
          sim("x", "t"))));
  // links propagate along the columns; the linked pair must straddle two
  // columns, which rules out the reflexive instances of sim
  cs.push_back(fForall(
      {"x", "y", "z", "t", "u", "w"},
      imp(fConj({sameColumn({"x", "y", "z"}), sameColumn({"t", "u", "w"}),
                 diffColumn("z", "t"), succ1("x", "y"), succ1("y", "z"),
                 sim("z", "t"), succ1("t", "u"), succ1("u", "w")}),
          sim("x", "w"))));
  // top and bottom markers agree across links
  cs.push_back(fForall({"x", "y"},
                       imp(sim("x", "y"),
                           fAnd(iff(pr("T", "x"), pr("T", "y")),
                                iff(pr("B", "x"), pr("B", "y"))))));
  cs.push_back(fForall(
      {"x", "y", "z", "t"},
      imp(fConj({sameColumn({"x", "y"}), sameColumn({"z", "t"}),
                 diffColumn("y", "z"), succ1("x", "y"), sim("y", "z"),
                 succ1("z", "t")}),
          fAnd(iff(pr("T", "x"), pr("T", "t")),
               iff(pr("B", "x"), pr("B", "t"))))));
  cs.push_back(colourPartition(t));
  cs.push_back(cornerColours(t));
  cs.push_back(verticalAdjacency(t));
  // horizontal constraints at the turns and across the links
  cs.push_back(fForall(
      {"x", "y", "z", "t"},
      imp(fConj({succ1("x", "y"), succ1("y", "z"), succ1("z", "t"),
                 pr("T", "y"), pr("T", "z")}),
          horOk(t, "y", "z"))));
  cs.push_back(fForall(
      {"x", "y", "z", "t"},
      imp(fConj({succ1("x", "y"), succ1("y", "z"), succ1("z", "t"),
                 pr("B", "y"), pr("B", "z")}),
          horOk(t, "y", "z"))));
  // the Er/Ec agreement pins z to the left column of the link, so the
  // constraint pairs are oriented left to right
  cs.push_back(fForall(
      {"x", "y", "z", "t", "u", "w"},
      imp(fConj({sameColumn({"x", "y", "z"}), sameColumn({"t", "u", "w"}),
                 diffColumn("z", "t"), sim("z", "t"), succ1("x", "y"),
                 succ1("y", "z"), succ1("t", "u"), succ1("u", "w"),
                 iff(pr("Er", "z"), pr("Ec", "z"))}),
          fConj({horOk(t, "x", "w"), horOk(t, "y", "u"),
                 horOk(t, "z", "t")}))));
  return fConj(cs);
}

namespace {

// word position of grid cell (row r, column j) along the column snake
size_t snakePos(size_t rows, size_t r, size_t j) {
  return j * rows + (j % 2 == 0 ? r : rows - 1 - r);
}

LabelSet gridLabels(const TilingSystem& t, const GridTiling& f, size_t rows,
                    size_t cols, size_t r, size_t j, bool twoOrders) {
  LabelSet ls;
  if (r == 0) ls.insert("B");
  if (r == rows - 1) ls.insert("T");
  if (j % 2 == 0) ls.insert("Ec");
  if (r % 2 == 0) ls.insert("Er");
  if (twoOrders) {
    if (j == 0) ls.insert("L");
    if (j == cols - 1) ls.insert("R");
  }
  ls.insert(colourPred(f[r][j]));
  return ls;
}

}  // namespace

DataWordModel buildGridDataWord(const TilingSystem& t, const GridTiling& f,
                                size_t rows, size_t cols) {
  validateTiling(t, f, rows, cols);
  DataWordModel m;
  m.word.positions.resize(rows * cols);
  m.classes.assign(rows * cols, 0);
  for (size_t r = 0; r < rows; ++r)
    for (size_t j = 0; j < cols; ++j)
      m.word.positions[snakePos(rows, r, j)] =
          gridLabels(t, f, rows, cols, r, j, false);
  // wavy links: columns j, j+1 at even rows for even j, odd rows for odd j;
  // everything else is a singleton class
  for (size_t p = 0; p < m.classes.size(); ++p) m.classes[p] = (int)p;
  for (size_t j = 0; j + 1 < cols; ++j)
    for (size_t r = (j % 2 == 0 ? 0 : 1); r < rows; r += 2)
      m.classes[snakePos(rows, r, j + 1)] =
          m.classes[snakePos(rows, r, j)];
  return m;
}

Signature tilingTwoOrderSignature(const TilingSystem& t) {
  Signature s;
  s.unary = {"B", "T", "Ec", "Er", "L", "R"};
  for (auto& c : t.colours) s.unary.push_back(colourPred(c));
  s.nav = {Rel::succh, Rel::lessh, Rel::succh2};
  return s;
}

FormulaPtr encodeTilingTwoOrders(const TilingSystem& t) {
  if (!t.valid()) throw std::runtime_error("invalid tiling system");
  auto succ2 = [](const char* a, const char* b) {
    return fNav(Rel::succh2, a, b);
  };
  std::vector<FormulaPtr> cs;
  cs.push_back(cornerExistence(true));
  cs.push_back(gridStep(true));
  cs.push_back(colourPartition(t));
  cs.push_back(cornerColours(t));
  cs.push_back(verticalAdjacency(t));
  // the second order starts in the top-left corner and ends bottom-left
  cs.push_back(fExists(
      {"x"}, fConj({pr("T", "x"), pr("L", "x"),
                    fNot(fExists({"y"}, succ2("y", "x")))})));
  cs.push_back(fExists(
      {"x"}, fConj({pr("B", "x"), pr("L", "x"),
                    fNot(fExists({"y"}, succ2("x", "y")))})));
  cs.push_back(fForall(
      {"x"}, imp(fNot(fAnd(pr("T", "x"), pr("L", "x"))),
                 fExists({"y"}, succ2("y", "x")))));
  cs.push_back(fForall(
      {"x"}, imp(fNot(fAnd(pr("B", "x"), pr("L", "x"))),
                 fExists({"y"}, succ2("x", "y")))));
  // each second-order step descends at a border or crosses to the next
  // column within a row, alternating direction with the row parity
  FormulaPtr leftDescent =
      fConj({pr("L", "x"), pr("L", "y"), pr("Er", "x"), fNot(pr("Er", "y")),
             fNot(pr("B", "x")), fNot(pr("T", "y"))});
  FormulaPtr rightDescent =
      fConj({pr("R", "x"), pr("R", "y"), fNot(pr("Er", "x")), pr("Er", "y"),
             fNot(pr("B", "x")), fNot(pr("T", "y"))});
  FormulaPtr horizontal = fConj(
      {diffColumn("x", "y"), iff(pr("Er", "x"), pr("Er", "y")),
       iff(pr("B", "x"), pr("B", "y")), iff(pr("T", "x"), pr("T", "y")),
       fOr(fConj({fNot(pr("Er", "x")), fNot(pr("R", "x")),
                  fNot(pr("L", "y"))}),
           fConj({pr("Er", "x"), fNot(pr("L", "x")), fNot(pr("R", "y"))})),
       imp(fNot(pr("Er", "x")), horOk(t, "x", "y")),
       imp(pr("Er", "x"), horOk(t, "y", "x"))});
  cs.push_back(fForall(
      {"x", "y"},
      imp(succ2("x", "y"), fDisj({leftDescent, rightDescent, horizontal}))));
  return fConj(cs);
}

TwoOrderWord buildGridTwoOrders(const TilingSystem& t, const GridTiling& f,
                                size_t rows, size_t cols) {
  validateTiling(t, f, rows, cols);
  TwoOrderWord m;
  m.word.positions.resize(rows * cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t j = 0; j < cols; ++j)
      m.word.positions[snakePos(rows, r, j)] =
          gridLabels(t, f, rows, cols, r, j, true);
  // order 2: rows from top to bottom, odd rows left to right, even rows
  // right to left
  for (size_t i = 0; i < rows; ++i) {
    size_t r = rows - 1 - i;
    for (size_t k = 0; k < cols; ++k) {
      size_t j = r % 2 == 1 ? k : cols - 1 - k;
      m.perm.push_back((int)snakePos(rows, r, j));
    }
  }
  return m;
}

}  // namespace odfkit
