#pragma once

// Exact solving and counting by backtracking over cell decisions, plus a
// brute-force enumeration oracle used to cross-validate counts.

#include <functional>
#include <optional>

#include "evolomino/board.hpp"

namespace evo {

struct SolveConfig {
  std::optional<unsigned long long> count_limit;
  std::optional<unsigned long long> node_budget;

  // Branching order over free white cells. ArrowFirst walks each arrow's
  // surroundings in path order (cells grouped by nearest arrow), RowMajor is
  // plain top-to-bottom scanning.
  enum class CellOrder { ArrowFirst, RowMajor };
  CellOrder cell_order = CellOrder::ArrowFirst;

  // Pruning rules, individually toggleable. Disabling any of them never
  // changes counts or witnesses, only the node count.
  bool prune_block_arrow_count = true;  // completed block with 0 or >=2 arrow squares
  bool prune_shape_pairs = true;        // finished consecutive pair fails extends_by_one
  bool prune_arrow_feasibility = true;  // arrow can no longer reach two blocks
};

enum class SolveStatus { Sat, Unsat, BudgetExhausted };

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<Solution> witness;
  std::optional<unsigned long long> count;
  unsigned long long nodes = 0;
};

// First valid solution in deterministic order, or unsat.
SolveOutcome solve(const Board& b, const SolveConfig& cfg = {});

// Exact number of distinct valid solutions (count field populated).
SolveOutcome count_solutions(const Board& b, const SolveConfig& cfg = {});

// Visits every valid solution in deterministic order until fn returns false.
SolveOutcome for_each_solution(const Board& b, const SolveConfig& cfg,
                               const std::function<bool(const Solution&)>& fn);

// Independent ground truth: enumerates every square placement over the free
// white cells and counts the ones the rules accept. Refuses boards with more
// than max_white free white cells.
unsigned long long oracle_count(const Board& b, int max_white = 24);

}  // namespace evo
