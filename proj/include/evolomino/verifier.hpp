#pragma once

// Rule checking: decides whether a solution satisfies the three puzzle rules
// and reports every violation found.

#include <optional>
#include <string>
#include <vector>

#include "evolomino/board.hpp"

namespace evo {

enum class Rule { R1, R2, R3 };

struct Violation {
  Rule rule;
  std::string subject;  // "arrow <i>" or "block <r>,<c>"
  std::string message;
};

struct VerificationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

// Blocks met along one arrow, in first-encounter order. A block occurring in
// two non-adjacent runs of the path sets the block-revisit error instead.
struct ArrowBlockSequence {
  int arrow = -1;
  std::vector<Block> blocks;
  std::optional<std::string> error;  // "block-revisit ..." when rejected
};

ArrowBlockSequence arrow_block_sequence(const Board& b, const Solution& s, int arrow_index);

// Checks R1 (one arrow square per block), R2 (two blocks per arrow) and
// R3 (each next block extends the previous by one square, translation only).
// Structural solution invariants are a precondition; see validate_solution.
VerificationReport verify(const Board& b, const Solution& s);

std::string to_string(Rule r);
std::string format_violation(const Violation& v);

}  // namespace evo
