#include "evolomino/board.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace evo {

namespace {

std::string cell_str(Cell c) {
  return std::to_string(c.row) + "," + std::to_string(c.col);
}

[[noreturn]] void fail(const std::string& msg) { throw BoardError(msg); }

[[noreturn]] void fail_line(int line, const std::string& msg) {
  fail("line " + std::to_string(line) + ": " + msg);
}

bool adjacent(Cell a, Cell b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

}  // namespace

int Board::arrow_at(Cell c) const {
  for (size_t i = 0; i < arrows_.size(); ++i) {
    for (Cell p : arrows_[i].path) {
      if (p == c) return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<Cell> Board::predrawn_cells() const {
  std::vector<Cell> out;
  for (int r = 1; r <= rows_; ++r)
    for (int c = 1; c <= cols_; ++c)
      if (predrawn({r, c})) out.push_back({r, c});
  return out;
}

std::vector<Cell> Board::white_cells() const {
  std::vector<Cell> out;
  for (int r = 1; r <= rows_; ++r)
    for (int c = 1; c <= cols_; ++c)
      if (white({r, c})) out.push_back({r, c});
  return out;
}

void Board::validate() const {
  if (rows_ < 1 || cols_ < 1) fail("board size must be at least 1x1");
  std::vector<int> owner(static_cast<size_t>(rows_) * cols_, -1);
  for (size_t i = 0; i < arrows_.size(); ++i) {
    const auto& path = arrows_[i].path;
    if (path.size() < 2)
      fail("arrow " + std::to_string(i + 1) + ": path must have at least 2 cells");
    for (size_t j = 0; j < path.size(); ++j) {
      Cell c = path[j];
      if (!in_bounds(c))
        fail("arrow " + std::to_string(i + 1) + ": cell " + cell_str(c) + " out of bounds");
      if (shaded(c))
        fail("arrow " + std::to_string(i + 1) + ": cell " + cell_str(c) + " is shaded");
      if (owner[index(c)] >= 0) {
        if (owner[index(c)] == static_cast<int>(i))
          fail("arrow " + std::to_string(i + 1) + ": revisits cell " + cell_str(c));
        fail("arrow cell conflict at " + cell_str(c));
      }
      owner[index(c)] = static_cast<int>(i);
      if (j > 0 && !adjacent(path[j - 1], c))
        fail("arrow " + std::to_string(i + 1) + ": cells " + cell_str(path[j - 1]) + " and " +
             cell_str(c) + " are not adjacent");
    }
  }
}

bool Solution::has(Cell c) const {
  return std::binary_search(squares.begin(), squares.end(), c);
}

Solution Solution::from_cells(std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return Solution{std::move(cells)};
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.emplace_back(text.substr(pos));
      break;
    }
    lines.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail_line(line, "expected integer for " + what + ", got '" + s + "'");
  }
}

Cell parse_cell_token(const std::string& t, int line) {
  size_t comma = t.find(',');
  if (comma == std::string::npos) fail_line(line, "expected r,c cell, got '" + t + "'");
  return {parse_int(t.substr(0, comma), line, "row"),
          parse_int(t.substr(comma + 1), line, "col")};
}

}  // namespace

Board parse_board(std::string_view text) {
  auto lines = split_lines(text);
  size_t ln = 0;
  auto next_line = [&](const char* what) -> const std::string& {
    if (ln >= lines.size()) fail("unexpected end of document, expected " + std::string(what));
    return lines[ln++];
  };

  if (next_line("header") != "evolomino 1") fail_line(1, "bad header, expected 'evolomino 1'");

  auto size_toks = tokens(next_line("size line"));
  if (size_toks.size() != 3 || size_toks[0] != "size")
    fail_line(static_cast<int>(ln), "expected 'size <rows> <cols>'");
  int rows = parse_int(size_toks[1], static_cast<int>(ln), "rows");
  int cols = parse_int(size_toks[2], static_cast<int>(ln), "cols");
  if (rows < 1 || cols < 1) fail_line(static_cast<int>(ln), "size must be at least 1 1");

  if (next_line("grid keyword") != "grid") fail_line(static_cast<int>(ln), "expected 'grid'");

  Board b(rows, cols);
  for (int r = 1; r <= rows; ++r) {
    const std::string& row = next_line("grid row");
    if (static_cast<int>(row.size()) != cols)
      fail_line(static_cast<int>(ln), "grid row has " + std::to_string(row.size()) +
                                          " characters, expected " + std::to_string(cols));
    for (int c = 1; c <= cols; ++c) {
      switch (row[c - 1]) {
        case '.': break;
        case '#': b.set_kind({r, c}, CellKind::Shaded); break;
        case 'o': b.set_kind({r, c}, CellKind::Predrawn); break;
        default:
          fail_line(static_cast<int>(ln), std::string("bad grid character '") + row[c - 1] +
                                              "' at cell " + cell_str({r, c}));
      }
    }
  }

  auto arrow_toks = tokens(next_line("arrows line"));
  if (arrow_toks.size() != 2 || arrow_toks[0] != "arrows")
    fail_line(static_cast<int>(ln), "expected 'arrows <k>'");
  int k = parse_int(arrow_toks[1], static_cast<int>(ln), "arrow count");
  if (k < 0) fail_line(static_cast<int>(ln), "arrow count must be nonnegative");

  for (int i = 0; i < k; ++i) {
    auto toks = tokens(next_line("arrow line"));
    if (toks.size() < 3 || toks[0] != "arrow")
      fail_line(static_cast<int>(ln), "expected 'arrow <r,c> <r,c> ...' with at least 2 cells");
    Arrow a;
    for (size_t t = 1; t < toks.size(); ++t)
      a.path.push_back(parse_cell_token(toks[t], static_cast<int>(ln)));
    for (Cell c : a.path) {
      if (!b.in_bounds(c))
        fail_line(static_cast<int>(ln), "arrow cell " + cell_str(c) + " out of bounds");
    }
    b.arrows().push_back(std::move(a));
  }
  for (; ln < lines.size(); ++ln) {
    if (!lines[ln].empty()) fail_line(static_cast<int>(ln + 1), "trailing content");
  }

  b.validate();
  return b;
}

std::string serialize_board(const Board& b) {
  std::string out;
  out += "evolomino 1\n";
  out += "size " + std::to_string(b.rows()) + " " + std::to_string(b.cols()) + "\n";
  out += "grid\n";
  for (int r = 1; r <= b.rows(); ++r) {
    for (int c = 1; c <= b.cols(); ++c) {
      switch (b.kind({r, c})) {
        case CellKind::White: out += '.'; break;
        case CellKind::Shaded: out += '#'; break;
        case CellKind::Predrawn: out += 'o'; break;
      }
    }
    out += '\n';
  }
  out += "arrows " + std::to_string(b.arrows().size()) + "\n";
  for (const Arrow& a : b.arrows()) {
    out += "arrow";
    for (Cell c : a.path) out += " " + cell_str(c);
    out += '\n';
  }
  return out;
}

Solution parse_solution(std::string_view text, const Board& b) {
  auto lines = split_lines(text);
  size_t ln = 0;
  auto next_line = [&](const char* what) -> const std::string& {
    if (ln >= lines.size()) fail("unexpected end of document, expected " + std::string(what));
    return lines[ln++];
  };
  auto toks = tokens(next_line("solution header"));
  if (toks.size() != 3 || toks[0] != "solution")
    fail_line(1, "expected 'solution <rows> <cols>'");
  int rows = parse_int(toks[1], 1, "rows");
  int cols = parse_int(toks[2], 1, "cols");
  if (rows != b.rows() || cols != b.cols()) fail_line(1, "solution size does not match board");

  std::vector<Cell> squares;
  for (int r = 1; r <= rows; ++r) {
    const std::string& row = next_line("solution row");
    if (static_cast<int>(row.size()) != cols)
      fail_line(static_cast<int>(ln), "solution row has " + std::to_string(row.size()) +
                                          " characters, expected " + std::to_string(cols));
    for (int c = 1; c <= cols; ++c) {
      char ch = row[c - 1];
      Cell cell{r, c};
      if (ch == '#') {
        if (!b.shaded(cell)) fail_line(static_cast<int>(ln), "'#' at " + cell_str(cell) +
                                                                 " but board cell is white");
      } else if (ch == 'x') {
        squares.push_back(cell);
      } else if (ch == '.') {
        if (b.shaded(cell)) fail_line(static_cast<int>(ln), "'.' at " + cell_str(cell) +
                                                                " but board cell is shaded");
      } else {
        fail_line(static_cast<int>(ln),
                  std::string("bad solution character '") + ch + "' at " + cell_str(cell));
      }
    }
  }
  for (; ln < lines.size(); ++ln) {
    if (!lines[ln].empty()) fail_line(static_cast<int>(ln + 1), "trailing content");
  }
  Solution s = Solution::from_cells(std::move(squares));
  validate_solution(b, s);
  return s;
}

std::string serialize_solution(const Board& b, const Solution& s) {
  std::string out = "solution " + std::to_string(b.rows()) + " " + std::to_string(b.cols()) + "\n";
  for (int r = 1; r <= b.rows(); ++r) {
    for (int c = 1; c <= b.cols(); ++c) {
      Cell cell{r, c};
      if (b.shaded(cell)) out += '#';
      else if (s.has(cell)) out += 'x';
      else out += '.';
    }
    out += '\n';
  }
  return out;
}

void validate_solution(const Board& b, const Solution& s) {
  for (Cell c : s.squares) {
    if (!b.in_bounds(c)) fail("solution square " + cell_str(c) + " out of bounds");
    if (b.shaded(c)) fail("solution square " + cell_str(c) + " on shaded cell");
  }
  for (Cell c : b.predrawn_cells()) {
    if (!s.has(c)) fail("pre-drawn square at " + cell_str(c) + " missing from solution");
  }
}

std::vector<Block> blocks_of(const Board& b, const Solution& s) {
  std::vector<Block> blocks;
  std::vector<char> seen(static_cast<size_t>(b.rows()) * b.cols(), 0);
  for (Cell start : s.squares) {
    if (seen[b.index(start)]) continue;
    Block blk;
    std::vector<Cell> stack{start};
    seen[b.index(start)] = 1;
    while (!stack.empty()) {
      Cell c = stack.back();
      stack.pop_back();
      blk.cells.push_back(c);
      const Cell nbrs[4] = {{c.row - 1, c.col}, {c.row + 1, c.col},
                            {c.row, c.col - 1}, {c.row, c.col + 1}};
      for (Cell n : nbrs) {
        if (!b.in_bounds(n) || seen[b.index(n)]) continue;
        if (s.has(n)) {
          seen[b.index(n)] = 1;
          stack.push_back(n);
        }
      }
    }
    std::sort(blk.cells.begin(), blk.cells.end());
    blocks.push_back(std::move(blk));
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& x, const Block& y) { return x.anchor() < y.anchor(); });
  return blocks;
}

Shape shape_of_cells(const std::vector<Cell>& cells) {
  int min_r = cells.front().row, min_c = cells.front().col;
  for (Cell c : cells) {
    min_r = std::min(min_r, c.row);
    min_c = std::min(min_c, c.col);
  }
  Shape sh;
  sh.cells.reserve(cells.size());
  for (Cell c : cells) sh.cells.emplace_back(c.row - min_r, c.col - min_c);
  std::sort(sh.cells.begin(), sh.cells.end());
  return sh;
}

Shape shape_of(const Block& block) { return shape_of_cells(block.cells); }

bool extends_by_one(const Shape& prev, const Shape& next) {
  if (next.size() != prev.size() + 1) return false;
  for (size_t skip = 0; skip < next.cells.size(); ++skip) {
    int min_r = 0, min_c = 0;
    bool first = true;
    for (size_t i = 0; i < next.cells.size(); ++i) {
      if (i == skip) continue;
      auto [r, c] = next.cells[i];
      if (first) {
        min_r = r;
        min_c = c;
        first = false;
      } else {
        min_r = std::min(min_r, r);
        min_c = std::min(min_c, c);
      }
    }
    std::vector<std::pair<int, int>> residue;
    residue.reserve(next.cells.size() - 1);
    for (size_t i = 0; i < next.cells.size(); ++i) {
      if (i == skip) continue;
      residue.emplace_back(next.cells[i].first - min_r, next.cells[i].second - min_c);
    }
    std::sort(residue.begin(), residue.end());
    if (residue == prev.cells) return true;
  }
  return false;
}

}  // namespace evo
