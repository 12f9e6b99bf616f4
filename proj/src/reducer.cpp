#include "evolomino/reducer.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "evolomino/builder.hpp"

namespace evo {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw CnfError(msg); }

}  // namespace

Cnf parse_cnf(std::string_view dimacs) {
  std::istringstream in{std::string(dimacs)};
  std::string line;
  Cnf f;
  bool have_header = false;
  int expected_clauses = 0;
  std::vector<int> pending;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string p, kind;
      if (!(ls >> p >> kind >> f.num_vars >> expected_clauses) || p != "p" || kind != "cnf")
        fail("line " + std::to_string(lineno) + ": expected 'p cnf <vars> <clauses>'");
      if (f.num_vars < 0 || expected_clauses < 0)
        fail("line " + std::to_string(lineno) + ": negative counts in header");
      have_header = true;
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          fail("clause ending on line " + std::to_string(lineno) + " has " +
               std::to_string(pending.size()) + " literals, expected exactly 3");
        std::array<Literal, 3> cl;
        for (int i = 0; i < 3; ++i) cl[i] = {std::abs(pending[i]), pending[i] < 0};
        f.clauses.push_back(cl);
        pending.clear();
      } else {
        if (std::abs(lit) > f.num_vars)
          fail("line " + std::to_string(lineno) + ": literal " + std::to_string(lit) +
               " out of range (" + std::to_string(f.num_vars) + " variables)");
        pending.push_back(lit);
      }
    }
    if (ls.fail() && !ls.eof())
      fail("line " + std::to_string(lineno) + ": bad token in clause data");
  }
  if (!have_header) fail("missing 'p cnf' header");
  if (!pending.empty()) fail("unterminated clause at end of input");
  if (static_cast<int>(f.clauses.size()) != expected_clauses)
    fail("header declares " + std::to_string(expected_clauses) + " clauses, found " +
         std::to_string(f.clauses.size()));
  return f;
}

std::string serialize_cnf(const Cnf& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars) + " " +
                    std::to_string(f.clauses.size()) + "\n";
  for (const auto& cl : f.clauses) {
    for (const Literal& l : cl) out += std::to_string(l.negated ? -l.var : l.var) + " ";
    out += "0\n";
  }
  return out;
}

std::string to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::Variable: return "variable";
    case GadgetKind::Negation: return "negation";
    case GadgetKind::Split: return "split";
    case GadgetKind::Clause: return "clause";
    case GadgetKind::Crossover: return "crossover";
    case GadgetKind::WireSegment: return "wire-segment";
  }
  return "?";
}

namespace {

// Column pitch between adjacent signal tracks. A crossover between tracks at
// columns T and T+4 occupies columns T-1 .. T+5.
constexpr int kPitch = 4;
constexpr int kBandRows = 16;  // vertical period of splits and crossovers

struct Occurrence {
  int var, clause, slot;
  bool negated;
};

// One open (not yet terminated) wire arrow, tracked in y-up coordinates.
struct Wire {
  int col = 0;
  int head = 0;  // y of the last path cell; path ends on column col
  std::vector<std::pair<int, int>> path;

  void rise_to(int y) {
    for (int i = head + 1; i <= y; ++i) path.emplace_back(col, i);
    head = y;
  }
  void jog_to(int new_col) {  // horizontal step(s) at the current head row
    int step = new_col > col ? 1 : -1;
    for (int c = col + step; step > 0 ? c <= new_col : c >= new_col; c += step)
      path.emplace_back(c, head);
    col = new_col;
  }
};

// Deferred cell/arrow operations in y-up coordinates; replayed once the full
// extent is known.
struct Sheet {
  std::vector<std::pair<int, int>> whites, predrawns;
  std::vector<std::vector<std::pair<int, int>>> arrows;
  int max_x = 1, max_y = 1;

  void white(int x, int y) { whites.emplace_back(x, y); grow(x, y); }
  void predrawn(int x, int y) { predrawns.emplace_back(x, y); grow(x, y); }
  int arrow(std::vector<std::pair<int, int>> path) {
    for (auto [x, y] : path) grow(x, y);
    arrows.push_back(std::move(path));
    return static_cast<int>(arrows.size()) - 1;
  }
  void grow(int x, int y) { max_x = std::max(max_x, x); max_y = std::max(max_y, y); }
};

struct Compiler {
  const Cnf& f;
  int m, n;
  Sheet sheet;
  LayoutPlan plan;
  DecodeMap decode_map;

  std::vector<Occurrence> occs;           // clause-major
  std::vector<int> ports;                 // track -> occurrence index (current)
  std::vector<int> swaps;                 // bubble-sort swap positions, in order
  std::vector<Wire> wires;                // per track
  std::vector<std::pair<int, int>> var_probe;  // trunk column per variable

  int next_ids[6] = {0, 0, 0, 0, 0, 0};

  explicit Compiler(const Cnf& formula)
      : f(formula), m(static_cast<int>(formula.clauses.size())), n(formula.num_vars) {}

  static int track_col(int j) { return 3 + kPitch * j; }

  int add_placement(GadgetKind kind, int x, int y_top) {
    int id = next_ids[static_cast<int>(kind)]++;
    // top_left recorded after the flip; stash y-up coords for now.
    plan.placements.push_back({kind, id, Cell{y_top, x}});
    return id;
  }

  void finish_wire(Wire& w) {
    sheet.arrow(std::move(w.path));
    w.path.clear();
  }

  // Terminates a wire as a signal port: tip pair at (col, y) and (col, y+1).
  void terminate_with_pair(Wire& w, int y) {
    w.rise_to(y);
    sheet.predrawn(w.col, y);
    sheet.predrawn(w.col, y + 1);
    finish_wire(w);
  }

  Wire start_wire(int col, int y) {
    sheet.predrawn(col, y);
    Wire w;
    w.col = col;
    w.head = y;
    w.path.emplace_back(col, y);
    return w;
  }

  // Variable gadget: fence row below, two room cells, a pre-drawn seed on the
  // arrow start. The two feasible start blocks (one square or a vertical
  // three) encode true and false.
  Wire place_variable(int var, int col) {
    sheet.white(col, 2);
    sheet.white(col, 3);
    var_probe[var - 1] = {col, 2};
    add_placement(GadgetKind::Variable, col - 1, 4);
    return start_wire(col, 4);
  }

  // Split: consumes the incoming wire at pair rows {p, p+1}; emits left and
  // right branch wires carrying the same signal.
  void place_split(Wire& in, int p, Wire& left_out, Wire& right_out) {
    int x = in.col;
    terminate_with_pair(in, p);
    add_placement(GadgetKind::Split, x - 1, p + 12);
    sheet.white(x, p + 2);
    sheet.predrawn(x, p + 3);  // link
    sheet.white(x, p + 4);
    sheet.white(x - 1, p + 5);  // wings beside the trunk start
    sheet.white(x + 1, p + 5);
    Wire trunk = start_wire(x, p + 5);
    trunk.rise_to(p + 7);
    sheet.predrawn(x, p + 7);
    sheet.predrawn(x, p + 8);
    finish_wire(trunk);
    sheet.white(x, p + 9);
    sheet.white(x, p + 10);       // stem top between the wing-row squares
    sheet.predrawn(x - 1, p + 10);  // wing row
    sheet.predrawn(x + 1, p + 10);
    sheet.white(x - 1, p + 11);
    sheet.white(x + 1, p + 11);
    left_out = start_wire(x - 1, p + 12);
    left_out.rise_to(p + 14);
    right_out = start_wire(x + 1, p + 12);
    right_out.rise_to(p + 14);
  }

  // Negation: consumes the wire, emits the inverted signal upward.
  int place_negation(Wire& w) {
    int x = w.col;
    int h = w.head + 2;
    terminate_with_pair(w, h);
    int id = add_placement(GadgetKind::Negation, x, h + 5);
    sheet.white(x, h + 2);
    sheet.predrawn(x, h + 3);  // link
    sheet.white(x, h + 4);
    w = start_wire(x, h + 5);
    return id;
  }

  // Crossover between adjacent tracks; a enters left (column T), b enters
  // right (column T+4). Afterwards a continues on the right, b on the left.
  int place_crossover(Wire& a, Wire& b, int T, int H) {
    terminate_with_pair(a, H);  // x input
    b.rise_to(H);               // y input jogs inward, tip two rows higher
    b.jog_to(T + 2);
    terminate_with_pair(b, H + 2);

    int s = H + 5, t = s + 6;
    int id = add_placement(GadgetKind::Crossover, T - 1, t + 3);
    sheet.white(T, H + 2);
    sheet.predrawn(T, H + 3);  // x link
    sheet.white(T, H + 4);
    sheet.white(T + 2, H + 4);  // gap below the y link
    sheet.predrawn(T, s);      // gamma start
    sheet.white(T + 1, s);     // arm
    sheet.predrawn(T + 2, s);  // y link
    std::vector<std::pair<int, int>> loop;
    loop.emplace_back(T, s);
    for (int y = s; y <= t; ++y) loop.emplace_back(T - 1, y);
    loop.emplace_back(T, t);
    sheet.arrow(std::move(loop));
    sheet.white(T, s + 3);
    sheet.predrawn(T, s + 4);  // second x link
    sheet.white(T, s + 5);
    sheet.predrawn(T, t);      // gamma tip
    sheet.white(T, t + 1);     // stem top
    sheet.white(T + 1, t);     // arm at the tip
    sheet.predrawn(T + 2, t);
    sheet.white(T + 2, t + 1);

    // x exit: rightward corridor to the right track, then up.
    Wire x_out = start_wire(T, s + 2);
    x_out.jog_to(T + 4);
    // y exit: up and leftward to the left track.
    Wire y_out = start_wire(T + 2, t + 2);
    y_out.rise_to(t + 3);
    y_out.jog_to(T);

    a = std::move(x_out);  // a now travels on the right track
    b = std::move(y_out);
    return id;
  }

  void run() {
    // Occurrence table, clause-major.
    for (int c = 0; c < m; ++c)
      for (int s = 0; s < 3; ++s) {
        const Literal& l = f.clauses[c][s];
        occs.push_back({l.var, c, s, l.negated});
      }
    std::vector<std::vector<int>> occ_of_var(n);
    for (size_t o = 0; o < occs.size(); ++o) occ_of_var[occs[o].var - 1].push_back(o);

    // Tracks hold occurrences in variable-major order initially.
    std::vector<int> first_track(n, -1);
    for (int v = 0; v < n; ++v) {
      if (occ_of_var[v].empty()) continue;
      first_track[v] = static_cast<int>(ports.size());
      for (int o : occ_of_var[v]) ports.push_back(o);
    }
    int tracks = static_cast<int>(ports.size());
    wires.assign(tracks, {});
    var_probe.assign(n, {0, 0});

    plan.routes.resize(occs.size());
    for (size_t o = 0; o < occs.size(); ++o) {
      plan.routes[o].var = occs[o].var;
      plan.routes[o].clause = occs[o].clause;
      plan.routes[o].slot = occs[o].slot;
      plan.routes[o].negated = occs[o].negated;
      plan.routes[o].track = static_cast<int>(o);  // final, clause-major
    }

    // Bottom band: variable gadgets and split fan-out chains.
    for (int v = 0; v < n; ++v) {
      int k = static_cast<int>(occ_of_var[v].size());
      if (k == 0) continue;  // placed after the tracks, see below
      int base = first_track[v];
      if (k == 1) {
        wires[base] = place_variable(v + 1, track_col(base));
        continue;
      }
      Wire chain = place_variable(v + 1, track_col(base) + 2);
      int p = 6;
      for (int s = 0; s < k - 1; ++s) {
        Wire left, right;
        place_split(chain, p, left, right);
        left.jog_to(track_col(base + s));
        wires[base + s] = std::move(left);
        if (s + 1 < k - 1) {
          right.jog_to(track_col(base + s + 1) + 2);
          chain = std::move(right);
        } else {
          right.jog_to(track_col(base + s + 1));
          wires[base + s + 1] = std::move(right);
        }
        p += kBandRows;
      }
    }

    // Unused variables get isolated, self-contained gadgets on the right.
    int unused_base = tracks > 0 ? track_col(tracks - 1) + 6 : 3;
    for (int v = 0; v < n; ++v) {
      if (!occ_of_var[v].empty()) continue;
      int col = unused_base;
      unused_base += kPitch;
      Wire w = place_variable(v + 1, col);
      terminate_with_pair(w, 6);
      sheet.white(col, 8);
      sheet.white(col, 9);
    }

    // Negations, one per negative occurrence, right after the fan-out.
    for (int j = 0; j < tracks; ++j) {
      if (!occs[ports[j]].negated) continue;
      int id = place_negation(wires[j]);
      plan.routes[ports[j]].negations.push_back(id);
    }

    // Permutation band: bubble-sort the tracks into clause-major order with
    // one crossover per adjacent swap.
    std::vector<int> cur = ports;
    for (bool swapped = true; swapped;) {
      swapped = false;
      for (int j = 0; j + 1 < tracks; ++j) {
        if (cur[j] > cur[j + 1]) {
          std::swap(cur[j], cur[j + 1]);
          swaps.push_back(j);
          swapped = true;
        }
      }
    }
    int H = 2;
    for (const Wire& w : wires) H = std::max(H, w.head);
    H += 2;
    for (int j : swaps) {
      int a_occ = ports[j], b_occ = ports[j + 1];
      int id = place_crossover(wires[j], wires[j + 1], track_col(j), H);
      std::swap(wires[j], wires[j + 1]);
      std::swap(ports[j], ports[j + 1]);
      plan.routes[a_occ].crossovers.push_back(id);
      plan.routes[b_occ].crossovers.push_back(id);
      plan.crossings.push_back({a_occ, b_occ, Cell{H + 11, track_col(j) - 1}});  // y-up, fixed later
      H += kBandRows;
    }

    // Clause band along one shared arrow row.
    int W = 2;
    for (const Wire& w : wires) W = std::max(W, w.head);
    W += 6;
    for (int c = 0; c < m; ++c) {
      int first_col = track_col(3 * c);
      int out_col = track_col(3 * c + 2) + 2;
      add_placement(GadgetKind::Clause, first_col, W + 2);
      for (int s = 0; s < 3; ++s) {
        int j = 3 * c + s;
        int x = track_col(j);
        terminate_with_pair(wires[j], W - 4);
        sheet.white(x, W - 2);
        sheet.predrawn(x, W - 1);  // clause input link
        sheet.white(x, W + 1);
        sheet.white(x, W + 2);
      }
      for (int y = W - 2; y <= W + 2; ++y) sheet.predrawn(out_col, y);
      std::vector<std::pair<int, int>> path;
      for (int x = first_col; x <= out_col; ++x) path.emplace_back(x, W);
      sheet.arrow(std::move(path));
    }

    // Inventory.
    plan.inventory.variable = next_ids[static_cast<int>(GadgetKind::Variable)];
    plan.inventory.clause = next_ids[static_cast<int>(GadgetKind::Clause)];
    plan.inventory.split = next_ids[static_cast<int>(GadgetKind::Split)];
    plan.inventory.negation = next_ids[static_cast<int>(GadgetKind::Negation)];
    plan.inventory.crossover = next_ids[static_cast<int>(GadgetKind::Crossover)];

    plan.rows = sheet.max_y + 1;  // top fence row
    plan.cols = sheet.max_x + 1;  // right fence column
  }

  Board materialize() const {
    BoardBuilder bb(plan.cols, plan.rows);
    for (auto [x, y] : sheet.whites) bb.white(x, y);
    for (const auto& path : sheet.arrows) bb.add_arrow(path);
    for (auto [x, y] : sheet.predrawns) bb.predrawn(x, y);
    return bb.build();
  }

  void fix_coordinates() {
    // Placements and crossings were recorded in y-up coordinates.
    for (Placement& p : plan.placements)
      p.top_left = Cell{plan.rows - p.top_left.row + 1, p.top_left.col};
    for (Crossing& c : plan.crossings) c.at = Cell{plan.rows - c.at.row + 1, c.at.col};
  }

  void build_decode_map() {
    decode_map.num_vars = n;
    decode_map.vars.resize(n);
    for (int v = 0; v < n; ++v) {
      auto [col, y] = var_probe[v];
      ProbeSpec spec;
      spec.probes = {Cell{plan.rows - (y + 1) + 1, col}, Cell{plan.rows - y + 1, col}};
      spec.true_pattern = "..";
      spec.false_pattern = "xx";
      decode_map.vars[v] = std::move(spec);
    }
  }
};

}  // namespace

LayoutPlan plan_layout(const Cnf& f) {
  Compiler comp(f);
  comp.run();
  comp.fix_coordinates();
  return comp.plan;
}

ReductionArtifact reduce(const Cnf& f) {
  Compiler comp(f);
  comp.run();
  Board board = comp.materialize();
  comp.fix_coordinates();
  comp.build_decode_map();
  return {std::move(board), std::move(comp.decode_map), comp.plan.inventory, f,
          std::move(comp.plan)};
}

std::string serialize_decode_map(const DecodeMap& m) {
  std::string out = "decodemap 1\n";
  out += "vars " + std::to_string(m.num_vars) + "\n";
  for (int v = 0; v < m.num_vars; ++v) {
    const ProbeSpec& p = m.vars[v];
    out += "var " + std::to_string(v + 1) + " probes " + std::to_string(p.probes.size());
    for (Cell c : p.probes) out += " " + std::to_string(c.row) + "," + std::to_string(c.col);
    out += " true " + p.true_pattern + " false " + p.false_pattern + "\n";
  }
  return out;
}

DecodeMap parse_decode_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "decodemap 1")
    throw DecodeError("bad decode map header");
  DecodeMap m;
  if (!std::getline(in, line)) throw DecodeError("missing vars line");
  {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw >> m.num_vars) || kw != "vars") throw DecodeError("bad vars line");
  }
  m.vars.resize(m.num_vars);
  for (int v = 0; v < m.num_vars; ++v) {
    if (!std::getline(in, line)) throw DecodeError("missing var line");
    std::istringstream ls(line);
    std::string kw, tkw, fkw, pkw;
    int idx, nprobes;
    ProbeSpec spec;
    if (!(ls >> kw >> idx >> pkw >> nprobes) || kw != "var" || pkw != "probes" || idx != v + 1)
      throw DecodeError("bad var line: " + line);
    for (int i = 0; i < nprobes; ++i) {
      std::string cell;
      if (!(ls >> cell)) throw DecodeError("missing probe cell");
      size_t comma = cell.find(',');
      if (comma == std::string::npos) throw DecodeError("bad probe cell: " + cell);
      spec.probes.push_back(
          {std::stoi(cell.substr(0, comma)), std::stoi(cell.substr(comma + 1))});
    }
    if (!(ls >> tkw >> spec.true_pattern >> fkw >> spec.false_pattern) || tkw != "true" ||
        fkw != "false")
      throw DecodeError("bad pattern spec: " + line);
    m.vars[v] = std::move(spec);
  }
  return m;
}

std::vector<bool> decode(const DecodeMap& m, const Solution& s) {
  std::vector<bool> assignment(m.num_vars);
  for (int v = 0; v < m.num_vars; ++v) {
    const ProbeSpec& spec = m.vars[v];
    std::string pat;
    for (Cell c : spec.probes) pat += s.has(c) ? 'x' : '.';
    if (pat == spec.true_pattern) assignment[v] = true;
    else if (pat == spec.false_pattern) assignment[v] = false;
    else
      throw DecodeError("variable " + std::to_string(v + 1) + " probe pattern '" + pat +
                        "' matches neither completion");
  }
  return assignment;
}

std::vector<bool> decode(const ReductionArtifact& art, const Solution& s) {
  return decode(art.decode_map, s);
}

bool satisfies(const Cnf& f, const std::vector<bool>& assignment) {
  for (const auto& cl : f.clauses) {
    bool sat = false;
    for (const Literal& l : cl) sat |= (assignment[l.var - 1] != l.negated);
    if (!sat) return false;
  }
  return true;
}

unsigned long long truth_table_count(const Cnf& f) {
  if (f.num_vars > 24) throw CnfError("truth_table_count: too many variables");
  unsigned long long count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
    std::vector<bool> a(f.num_vars);
    for (int v = 0; v < f.num_vars; ++v) a[v] = (bits >> v) & 1;
    if (satisfies(f, a)) ++count;
  }
  return count;
}

ParsimonyReport check_parsimony(const Cnf& f, std::optional<unsigned long long> node_budget) {
  ParsimonyReport report;
  report.sat_count = truth_table_count(f);
  ReductionArtifact art = reduce(f);
  SolveConfig cfg;
  cfg.node_budget = node_budget;
  SolveOutcome outcome = count_solutions(art.board, cfg);
  if (outcome.status == SolveStatus::BudgetExhausted) {
    report.budget_exhausted = true;
    return report;
  }
  report.puzzle_count = *outcome.count;
  report.equal = report.sat_count == report.puzzle_count;
  return report;
}

}  // namespace evo
