#pragma once

// Core puzzle model: board grid, arrows, solutions, block decomposition and
// the translation-only shape algebra used by the progression rule.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evo {

// 1-based grid coordinates, row 1 is the top row.
struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

// Ordered path of cells, start to tip. Consecutive cells are orthogonally
// adjacent, no cell repeats.
struct Arrow {
  std::vector<Cell> path;
};

enum class CellKind : std::uint8_t { White, Shaded, Predrawn };

struct BoardError : std::runtime_error {
  explicit BoardError(const std::string& what) : std::runtime_error(what) {}
};

class Board {
 public:
  Board() = default;
  Board(int rows, int cols)
      : rows_(rows), cols_(cols), kind_(static_cast<size_t>(rows) * cols, CellKind::White) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool in_bounds(Cell c) const {
    return c.row >= 1 && c.row <= rows_ && c.col >= 1 && c.col <= cols_;
  }
  CellKind kind(Cell c) const { return kind_[index(c)]; }
  void set_kind(Cell c, CellKind k) { kind_[index(c)] = k; }
  bool shaded(Cell c) const { return kind(c) == CellKind::Shaded; }
  bool white(Cell c) const { return kind(c) != CellKind::Shaded; }
  bool predrawn(Cell c) const { return kind(c) == CellKind::Predrawn; }

  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::vector<Arrow>& arrows() { return arrows_; }

  // Index of the arrow whose path covers c, or -1. At most one by invariant.
  int arrow_at(Cell c) const;
  bool on_arrow(Cell c) const { return arrow_at(c) >= 0; }

  std::vector<Cell> predrawn_cells() const;
  std::vector<Cell> white_cells() const;

  // Throws BoardError if any structural invariant fails.
  void validate() const;

  size_t index(Cell c) const {
    return static_cast<size_t>(c.row - 1) * cols_ + (c.col - 1);
  }

  bool operator==(const Board& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<CellKind> kind_;
  std::vector<Arrow> arrows_;
};

// Squares drawn on white cells; predrawn squares are always included.
struct Solution {
  std::vector<Cell> squares;  // sorted, unique

  bool has(Cell c) const;
  static Solution from_cells(std::vector<Cell> cells);
};

// Maximal 4-connected group of squares.
struct Block {
  std::vector<Cell> cells;  // sorted, nonempty
  Cell anchor() const { return cells.front(); }
  int size() const { return static_cast<int>(cells.size()); }
};

// Offsets normalized so min row offset and min col offset are both 0.
// Translation-invariant, orientation-sensitive.
struct Shape {
  std::vector<std::pair<int, int>> cells;  // sorted (drow, dcol)
  bool operator==(const Shape&) const = default;
  int size() const { return static_cast<int>(cells.size()); }
};

Board parse_board(std::string_view text);
std::string serialize_board(const Board& b);

// Solution files carry the full square set; shading must match the board and
// every predrawn square must be present (structural requirements).
Solution parse_solution(std::string_view text, const Board& b);
std::string serialize_solution(const Board& b, const Solution& s);

// Structural check of a solution against a board (bounds, shading, predrawn).
void validate_solution(const Board& b, const Solution& s);

// Partition of s.squares into maximal 4-connected blocks, sorted by anchor.
std::vector<Block> blocks_of(const Board& b, const Solution& s);

Shape shape_of(const Block& block);
Shape shape_of_cells(const std::vector<Cell>& cells);

// True iff next has exactly one more cell than prev and removing some cell of
// next leaves a set equal to prev up to translation.
bool extends_by_one(const Shape& prev, const Shape& next);

}  // namespace evo
