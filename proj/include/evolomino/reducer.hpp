#pragma once

// 3-CNF to Evolomino compiler: places variable, split, negation, crossover
// and clause gadgets on a shared grid, wires them with fenced arrows, and
// decodes puzzle solutions back into truth assignments.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evolomino/board.hpp"
#include "evolomino/solver.hpp"

namespace evo {

struct Literal {
  int var = 0;  // 1-based
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

struct Cnf {
  int num_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;
};

struct CnfError : std::runtime_error {
  explicit CnfError(const std::string& what) : std::runtime_error(what) {}
};

Cnf parse_cnf(std::string_view dimacs);
std::string serialize_cnf(const Cnf& f);

enum class GadgetKind { Variable, Negation, Split, Clause, Crossover, WireSegment };
std::string to_string(GadgetKind k);

struct Placement {
  GadgetKind kind;
  int id;         // instance id within its kind
  Cell top_left;  // board coordinates
};

// One literal occurrence: its fan-out leaf and everything inserted on the way
// to its clause port.
struct Route {
  int var = 0;     // 1-based
  int clause = 0;  // 0-based
  int slot = 0;    // 0..2 within the clause
  bool negated = false;
  int track = 0;               // final track index (clause-major)
  std::vector<int> negations;  // negation instance ids on this route
  std::vector<int> crossovers; // crossover instance ids this route passes
};

struct Crossing {
  int route_a = 0;  // occurrence indices (clause-major), a left of b on entry
  int route_b = 0;
  Cell at;          // crossover gadget anchor cell
};

struct Inventory {
  int variable = 0;
  int clause = 0;
  int split = 0;
  int negation = 0;
  int crossover = 0;
  bool operator==(const Inventory&) const = default;
};

struct LayoutPlan {
  int rows = 0;
  int cols = 0;
  std::vector<Placement> placements;
  std::vector<Route> routes;
  std::vector<Crossing> crossings;
  Inventory inventory;
};

// Probe cells distinguishing the two completions of one variable gadget.
struct ProbeSpec {
  std::vector<Cell> probes;
  std::string true_pattern;   // glyphs over {., x}, aligned with probes
  std::string false_pattern;
};

struct DecodeMap {
  int num_vars = 0;
  std::vector<ProbeSpec> vars;  // index 0 = variable 1
};

std::string serialize_decode_map(const DecodeMap& m);
DecodeMap parse_decode_map(std::string_view text);

struct ReductionArtifact {
  Board board;
  DecodeMap decode_map;
  Inventory inventory;
  Cnf formula;
  LayoutPlan plan;
};

LayoutPlan plan_layout(const Cnf& f);
ReductionArtifact reduce(const Cnf& f);

struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Assignment per variable (index 0 = variable 1). Throws DecodeError if some
// probe pattern matches neither completion.
std::vector<bool> decode(const DecodeMap& m, const Solution& s);
std::vector<bool> decode(const ReductionArtifact& art, const Solution& s);

bool satisfies(const Cnf& f, const std::vector<bool>& assignment);

// Independent #SAT by truth-table enumeration; requires num_vars <= 24.
unsigned long long truth_table_count(const Cnf& f);

struct ParsimonyReport {
  unsigned long long sat_count = 0;
  unsigned long long puzzle_count = 0;
  bool equal = false;
  bool budget_exhausted = false;
};

ParsimonyReport check_parsimony(const Cnf& f,
                                std::optional<unsigned long long> node_budget = {});

}  // namespace evo
