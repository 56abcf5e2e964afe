#pragma once

#include <string>
#include <utility>
#include <vector>

#include "odfkit/formula.hpp"
#include "odfkit/structures.hpp"

namespace odfkit {

// Colours with horizontal and vertical adjacency constraints; c0 must sit in
// the bottom-left grid corner, c1 in the top-right one.
struct TilingSystem {
  std::vector<std::string> colours;
  std::string c0, c1;
  std::vector<std::pair<std::string, std::string>> hor, ver;

  bool valid() const;
};

// JSON: {"colours":[...],"c0":"...","c1":"...","hor":[["a","b"],...],"ver":[...]}
TilingSystem tilingSystemFromJson(const std::string& text);
std::string tilingSystemToJson(const TilingSystem& t);

// Grid colouring, f[row][col]; row 0 is the bottom row, column 0 the left one.
using GridTiling = std::vector<std::vector<std::string>>;

// Throws unless rows is even, cols odd, f has the right shape, the corner
// colours match, horizontally adjacent cells satisfy hor and vertically
// adjacent cells satisfy ver.
void validateTiling(const TilingSystem& t, const GridTiling& f, size_t rows,
                    size_t cols);

// Unary predicates of the encodings: B/T (bottom/top row), Ec/Er (even
// column/row), L/R (leftmost/rightmost column, two-order variant only) and
// P_<colour>.
Signature tilingDataWordSignature(const TilingSystem& t);
Signature tilingTwoOrderSignature(const TilingSystem& t);

// A sentence over {succh, sim} satisfiable over finite data words iff t tiles
// some grid with an even number of rows and an odd number of columns: models
// are grids whose word order snakes up and down the columns, with two-element
// classes stitching neighbouring columns together.
FormulaPtr encodeTilingDataWord(const TilingSystem& t);

// The intended model of encodeTilingDataWord for a valid tiling f.
DataWordModel buildGridDataWord(const TilingSystem& t, const GridTiling& f,
                                size_t rows, size_t cols);

// Two-order variant over {succh, succh2}: order 1 snakes up and down the
// columns, order 2 snakes left and right through the rows from the top-left
// corner to the bottom-left one, descending at the borders.
FormulaPtr encodeTilingTwoOrders(const TilingSystem& t);
TwoOrderWord buildGridTwoOrders(const TilingSystem& t, const GridTiling& f,
                                size_t rows, size_t cols);

// Predicates N, P, Q and the local-position bits P0..P{n-1}.
Signature deepPathSignature(unsigned n);

// A sentence over {succv}, polynomial in n, whose models contain a vertical
// chain of N nodes of length 2^(2^n): each N node carries 2^n P-children
// whose Q bits spell a counter that the N-child must increment.
FormulaPtr deepPathFormula(unsigned n);

// The intended model: the full counter chain. Throws for n = 0 and for n > 3
// (the chain length is 2^(2^n)).
TreeModel buildDeepPathModel(unsigned n);

}  // namespace odfkit
