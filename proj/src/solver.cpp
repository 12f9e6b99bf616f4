#include "evolomino/solver.hpp"

#include <algorithm>
#include <deque>

#include "evolomino/verifier.hpp"

namespace evo {

namespace {

enum : int8_t { kUndecided = 0, kEmpty = 1, kSquare = 2 };

struct Searcher {
  const Board& board;
  const SolveConfig& cfg;
  int rows, cols;
  std::vector<int8_t> white;     // per board index
  std::vector<int> arrow_idx;    // -1 if not on an arrow
  std::vector<int> path_pos;     // position within its arrow
  std::vector<int8_t> state;     // kUndecided/kEmpty/kSquare per board index
  std::vector<size_t> order;     // decision order over free white cells
  unsigned long long nodes = 0;
  bool budget_hit = false;

  std::function<bool(const Solution&)> on_solution;  // returns false to stop

  explicit Searcher(const Board& b, const SolveConfig& c) : board(b), cfg(c) {
    rows = b.rows();
    cols = b.cols();
    size_t n = static_cast<size_t>(rows) * cols;
    white.assign(n, 0);
    arrow_idx.assign(n, -1);
    path_pos.assign(n, -1);
    state.assign(n, kEmpty);  // shaded cells stay decided-empty
    for (int r = 1; r <= rows; ++r) {
      for (int c = 1; c <= cols; ++c) {
        Cell cell{r, c};
        size_t i = b.index(cell);
        if (b.white(cell)) {
          white[i] = 1;
          state[i] = b.predrawn(cell) ? kSquare : kUndecided;
        }
      }
    }
    for (size_t a = 0; a < b.arrows().size(); ++a) {
      const auto& path = b.arrows()[a].path;
      for (size_t p = 0; p < path.size(); ++p) {
        size_t i = b.index(path[p]);
        arrow_idx[i] = static_cast<int>(a);
        path_pos[i] = static_cast<int>(p);
      }
    }
    build_order();
  }

  size_t idx(int r, int c) const { return static_cast<size_t>(r - 1) * cols + (c - 1); }
  Cell cell_of(size_t i) const {
    return {static_cast<int>(i) / cols + 1, static_cast<int>(i) % cols + 1};
  }

  void build_order() {
    std::vector<size_t> free_cells;
    for (size_t i = 0; i < white.size(); ++i)
      if (white[i] && state[i] == kUndecided) free_cells.push_back(i);

    if (cfg.cell_order == SolveConfig::CellOrder::RowMajor) {
      order = free_cells;  // already row-major
      return;
    }

    // Multi-source BFS from arrow path cells, sources in (arrow, path) order.
    // Each free cell is keyed by the arrow region that reaches it first.
    struct Key {
      int arrow, pos, dist;
    };
    std::vector<Key> key(white.size(), {-1, -1, -1});
    std::deque<size_t> queue;
    for (size_t a = 0; a < board.arrows().size(); ++a) {
      const auto& path = board.arrows()[a].path;
      for (size_t p = 0; p < path.size(); ++p) {
        size_t i = board.index(path[p]);
        key[i] = {static_cast<int>(a), static_cast<int>(p), 0};
        queue.push_back(i);
      }
    }
    while (!queue.empty()) {
      size_t i = queue.front();
      queue.pop_front();
      Cell c = cell_of(i);
      const Cell nbrs[4] = {{c.row - 1, c.col}, {c.row + 1, c.col},
                            {c.row, c.col - 1}, {c.row, c.col + 1}};
      for (Cell nb : nbrs) {
        if (!board.in_bounds(nb)) continue;
        size_t j = board.index(nb);
        if (!white[j] || key[j].arrow >= 0) continue;
        key[j] = {key[i].arrow, key[i].pos, key[i].dist + 1};
        queue.push_back(j);
      }
    }
    std::stable_sort(free_cells.begin(), free_cells.end(), [&](size_t x, size_t y) {
      const Key &a = key[x], &b = key[y];
      bool ax = a.arrow >= 0, bx = b.arrow >= 0;
      if (ax != bx) return ax > bx;  // reachable cells first
      if (!ax) return x < y;         // arrowless area row-major
      if (a.arrow != b.arrow) return a.arrow < b.arrow;
      if (a.pos != b.pos) return a.pos < b.pos;
      if (a.dist != b.dist) return a.dist < b.dist;
      return x < y;
    });
    order = std::move(free_cells);
  }

  // Connected squares containing i.
  void block_from(size_t i, std::vector<size_t>& out) const {
    out.clear();
    out.push_back(i);
    thread_local std::vector<size_t> stack;
    thread_local std::vector<char> mark;
    if (mark.size() != white.size()) mark.assign(white.size(), 0);
    stack.clear();
    stack.push_back(i);
    mark[i] = 1;
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      Cell c = cell_of(cur);
      const Cell nbrs[4] = {{c.row - 1, c.col}, {c.row + 1, c.col},
                            {c.row, c.col - 1}, {c.row, c.col + 1}};
      for (Cell nb : nbrs) {
        if (!board.in_bounds(nb)) continue;
        size_t j = board.index(nb);
        if (mark[j] || state[j] != kSquare) continue;
        mark[j] = 1;
        stack.push_back(j);
        out.push_back(j);
      }
    }
    for (size_t m : out) mark[m] = 0;
  }

  bool block_completed(const std::vector<size_t>& blk) const {
    for (size_t i : blk) {
      Cell c = cell_of(i);
      const Cell nbrs[4] = {{c.row - 1, c.col}, {c.row + 1, c.col},
                            {c.row, c.col - 1}, {c.row, c.col + 1}};
      for (Cell nb : nbrs) {
        if (!board.in_bounds(nb)) continue;
        if (state[board.index(nb)] == kUndecided) return false;
      }
    }
    return true;
  }

  int arrow_squares(const std::vector<size_t>& blk) const {
    int n = 0;
    for (size_t i : blk) n += (arrow_idx[i] >= 0);
    return n;
  }

  Shape shape_from(const std::vector<size_t>& blk) const {
    std::vector<Cell> cells;
    cells.reserve(blk.size());
    for (size_t i : blk) cells.push_back(cell_of(i));
    return shape_of_cells(cells);
  }

  // Nearest decided square run along arrow a starting at pos and stepping by
  // dir; all cells in between must be decided-empty. Returns block or empty.
  bool scan_run(int a, int pos, int dir, std::vector<size_t>& out) const {
    const auto& path = board.arrows()[a].path;
    for (int p = pos; p >= 0 && p < static_cast<int>(path.size()); p += dir) {
      size_t i = board.index(path[p]);
      if (state[i] == kUndecided) return false;
      if (state[i] == kSquare) {
        block_from(i, out);
        return true;
      }
    }
    return false;
  }

  // R3 check between a completed block (with its single on-arrow cell at
  // path position pos of arrow a) and its decided sequence neighbors.
  bool pairs_ok_around_block(int a, int pos, const std::vector<size_t>& blk) {
    std::vector<size_t> other;
    if (scan_run(a, pos - 1, -1, other) && block_completed(other)) {
      if (!extends_by_one(shape_from(other), shape_from(blk))) return false;
    }
    if (scan_run(a, pos + 1, +1, other) && block_completed(other)) {
      if (!extends_by_one(shape_from(blk), shape_from(other))) return false;
    }
    return true;
  }

  // R3 check across a decided-empty gap cell at path position pos.
  bool pairs_ok_across_gap(int a, int pos) {
    std::vector<size_t> left, right;
    if (!scan_run(a, pos - 1, -1, left) || !block_completed(left)) return true;
    if (!scan_run(a, pos + 1, +1, right) || !block_completed(right)) return true;
    if (arrow_squares(left) != 1 || arrow_squares(right) != 1) return true;  // R1 handles it
    return extends_by_one(shape_from(left), shape_from(right));
  }

  bool arrow_feasible(int a) const {
    const auto& path = board.arrows()[a].path;
    int runs = 0, undecided = 0;
    bool in_run = false;
    for (Cell c : path) {
      int8_t st = state[board.index(c)];
      if (st == kUndecided) ++undecided;
      bool sq = (st == kSquare);
      if (sq && !in_run) ++runs;
      in_run = sq;
    }
    if (undecided == 0) return runs >= 2;
    return runs + undecided >= 2;
  }

  bool consistent_after(size_t i) {
    int8_t val = state[i];
    std::vector<size_t> blk;
    if (val == kSquare) {
      block_from(i, blk);
      if (cfg.prune_block_arrow_count && arrow_squares(blk) >= 2) return false;
      if (block_completed(blk)) {
        int n = arrow_squares(blk);
        if (cfg.prune_block_arrow_count && n != 1) return false;
        if (cfg.prune_shape_pairs && n == 1) {
          for (size_t m : blk) {
            if (arrow_idx[m] >= 0) {
              if (!pairs_ok_around_block(arrow_idx[m], path_pos[m], blk)) return false;
              break;
            }
          }
        }
      }
    } else {
      Cell c = cell_of(i);
      const Cell nbrs[4] = {{c.row - 1, c.col}, {c.row + 1, c.col},
                            {c.row, c.col - 1}, {c.row, c.col + 1}};
      size_t checked[4];
      int nchecked = 0;
      for (Cell nb : nbrs) {
        if (!board.in_bounds(nb)) continue;
        size_t j = board.index(nb);
        if (state[j] != kSquare) continue;
        block_from(j, blk);
        size_t anchor = *std::min_element(blk.begin(), blk.end());
        bool dup = false;
        for (int k = 0; k < nchecked; ++k) dup |= (checked[k] == anchor);
        if (dup) continue;
        checked[nchecked++] = anchor;
        if (!block_completed(blk)) continue;
        int n = arrow_squares(blk);
        if (cfg.prune_block_arrow_count && n != 1) return false;
        if (cfg.prune_shape_pairs && n == 1) {
          for (size_t m : blk) {
            if (arrow_idx[m] >= 0) {
              if (!pairs_ok_around_block(arrow_idx[m], path_pos[m], blk)) return false;
              break;
            }
          }
        }
      }
      if (cfg.prune_shape_pairs && arrow_idx[i] >= 0) {
        if (!pairs_ok_across_gap(arrow_idx[i], path_pos[i])) return false;
      }
    }
    if (cfg.prune_arrow_feasibility && arrow_idx[i] >= 0) {
      if (!arrow_feasible(arrow_idx[i])) return false;
    }
    return true;
  }

  Solution current_solution() const {
    std::vector<Cell> squares;
    for (size_t i = 0; i < state.size(); ++i)
      if (white[i] && state[i] == kSquare) squares.push_back(cell_of(i));
    return Solution::from_cells(std::move(squares));
  }

  // Returns false to stop the whole search.
  bool dfs(size_t depth) {
    if (depth == order.size()) {
      Solution s = current_solution();
      if (verify(board, s).valid) return on_solution(s);
      return true;
    }
    size_t i = order[depth];
    for (int8_t val : {kEmpty, kSquare}) {
      if (cfg.node_budget && nodes >= *cfg.node_budget) {
        budget_hit = true;
        return false;
      }
      ++nodes;
      state[i] = val;
      bool ok = consistent_after(i);
      if (ok && !dfs(depth + 1)) {
        state[i] = kUndecided;
        return false;
      }
      state[i] = kUndecided;
    }
    return true;
  }
};

}  // namespace

SolveOutcome for_each_solution(const Board& b, const SolveConfig& cfg,
                               const std::function<bool(const Solution&)>& fn) {
  Searcher searcher(b, cfg);
  SolveOutcome out;
  unsigned long long found = 0;
  searcher.on_solution = [&](const Solution& s) {
    ++found;
    if (!out.witness) out.witness = s;
    bool keep_going = fn(s);
    if (cfg.count_limit && found >= *cfg.count_limit) keep_going = false;
    return keep_going;
  };
  searcher.dfs(0);
  out.nodes = searcher.nodes;
  if (searcher.budget_hit) {
    out.status = SolveStatus::BudgetExhausted;
    out.witness.reset();
    return out;
  }
  out.status = found > 0 ? SolveStatus::Sat : SolveStatus::Unsat;
  out.count = found;
  return out;
}

SolveOutcome solve(const Board& b, const SolveConfig& cfg) {
  SolveOutcome out = for_each_solution(b, cfg, [](const Solution&) { return false; });
  out.count.reset();  // a stopped enumeration is not a count
  return out;
}

SolveOutcome count_solutions(const Board& b, const SolveConfig& cfg) {
  return for_each_solution(b, cfg, [](const Solution&) { return true; });
}

}  // namespace evo
