// Brute-force solution counting, independent of the backtracking solver.
// Enumerates every placement of squares over the free white cells (Gray-code
// order, one flip per step) and checks the three rules directly on bitboards.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <thread>
#include <vector>

#include "evolomino/solver.hpp"
#include "evolomino/verifier.hpp"

namespace evo {

namespace {

constexpr int kWords = 4;
constexpr int kMaxBits = kWords * 64;

struct BitGrid {
  std::array<std::uint64_t, kWords> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void flip(int i) { w[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool any() const { return w[0] | w[1] | w[2] | w[3]; }
  int count() const {
    return std::popcount(w[0]) + std::popcount(w[1]) + std::popcount(w[2]) + std::popcount(w[3]);
  }
  int lowest() const {
    for (int k = 0; k < kWords; ++k)
      if (w[k]) return k * 64 + std::countr_zero(w[k]);
    return -1;
  }
  friend BitGrid operator&(BitGrid a, const BitGrid& b) {
    for (int k = 0; k < kWords; ++k) a.w[k] &= b.w[k];
    return a;
  }
  friend BitGrid operator|(BitGrid a, const BitGrid& b) {
    for (int k = 0; k < kWords; ++k) a.w[k] |= b.w[k];
    return a;
  }
  friend BitGrid operator~(BitGrid a) {
    for (int k = 0; k < kWords; ++k) a.w[k] = ~a.w[k];
    return a;
  }
  friend BitGrid operator<<(BitGrid a, int s) {
    BitGrid r;
    int word = s >> 6, bit = s & 63;
    for (int k = kWords - 1; k >= 0; --k) {
      std::uint64_t v = 0;
      if (k - word >= 0) v = a.w[k - word] << bit;
      if (bit && k - word - 1 >= 0) v |= a.w[k - word - 1] >> (64 - bit);
      r.w[k] = v;
    }
    return r;
  }
  friend BitGrid operator>>(BitGrid a, int s) {
    BitGrid r;
    int word = s >> 6, bit = s & 63;
    for (int k = 0; k < kWords; ++k) {
      std::uint64_t v = 0;
      if (k + word < kWords) v = a.w[k + word] >> bit;
      if (bit && k + word + 1 < kWords) v |= a.w[k + word + 1] << (64 - bit);
      r.w[k] = v;
    }
    return r;
  }
  bool operator==(const BitGrid&) const = default;
};

struct OracleCtx {
  int stride = 0;
  BitGrid arrow_cells;
  std::vector<std::vector<int>> paths;  // per arrow, bit indices in order

  BitGrid neighbors(const BitGrid& s) const {
    return (s << 1) | (s >> 1) | (s << stride) | (s >> stride);
  }

  // Shape as normalized sorted offsets derived from bit positions.
  std::vector<std::pair<int, int>> shape(const BitGrid& comp) const {
    std::vector<std::pair<int, int>> cells;
    for (int k = 0; k < kWords; ++k) {
      std::uint64_t v = comp.w[k];
      while (v) {
        int i = k * 64 + std::countr_zero(v);
        v &= v - 1;
        cells.emplace_back(i / stride, i % stride);
      }
    }
    int mr = cells[0].first, mc = cells[0].second;
    for (auto [r, c] : cells) {
      mr = std::min(mr, r);
      mc = std::min(mc, c);
    }
    for (auto& [r, c] : cells) {
      r -= mr;
      c -= mc;
    }
    std::sort(cells.begin(), cells.end());
    return cells;
  }

  static bool grows_by_one(const std::vector<std::pair<int, int>>& prev,
                           const std::vector<std::pair<int, int>>& next) {
    if (next.size() != prev.size() + 1) return false;
    for (size_t skip = 0; skip < next.size(); ++skip) {
      std::vector<std::pair<int, int>> residue;
      residue.reserve(prev.size());
      for (size_t i = 0; i < next.size(); ++i)
        if (i != skip) residue.push_back(next[i]);
      int mr = residue[0].first, mc = residue[0].second;
      for (auto [r, c] : residue) {
        mr = std::min(mr, r);
        mc = std::min(mc, c);
      }
      for (auto& [r, c] : residue) {
        r -= mr;
        c -= mc;
      }
      std::sort(residue.begin(), residue.end());
      if (residue == prev) return true;
    }
    return false;
  }

  bool accepts(const BitGrid& squares) const {
    // Component labels; each component needs exactly one arrow cell.
    std::vector<BitGrid> comps;
    BitGrid rest = squares;
    while (rest.any()) {
      BitGrid comp;
      comp.set(rest.lowest());
      for (;;) {
        BitGrid grown = (comp | neighbors(comp)) & squares;
        if (grown == comp) break;
        comp = grown;
      }
      if ((comp & arrow_cells).count() != 1) return false;
      rest = rest & ~comp;
      comps.push_back(comp);
    }
    // Per arrow: block sequence in path order, no revisits, >=2 entries,
    // each entry one square larger than the previous, translation only.
    for (const auto& path : paths) {
      int prev_comp = -1;
      std::vector<int> seq;
      for (int bit : path) {
        int id = -1;
        if (squares.test(bit)) {
          for (size_t k = 0; k < comps.size(); ++k)
            if (comps[k].test(bit)) { id = static_cast<int>(k); break; }
        }
        if (id < 0) {
          prev_comp = -1;
          continue;
        }
        if (id == prev_comp) continue;
        for (int earlier : seq)
          if (earlier == id) return false;  // revisit
        seq.push_back(id);
        prev_comp = id;
      }
      if (seq.size() < 2) return false;
      for (size_t k = 0; k + 1 < seq.size(); ++k)
        if (!grows_by_one(shape(comps[seq[k]]), shape(comps[seq[k + 1]]))) return false;
    }
    return true;
  }
};

// Fallback for boards whose padded grid exceeds the bitboard capacity:
// plain subset enumeration checked by the verifier.
unsigned long long oracle_count_generic(const Board& b, const std::vector<Cell>& free_cells) {
  unsigned long long count = 0;
  std::vector<Cell> predrawn = b.predrawn_cells();
  size_t k = free_cells.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<Cell> squares = predrawn;
    for (size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) squares.push_back(free_cells[i]);
    if (verify(b, Solution::from_cells(std::move(squares))).valid) ++count;
  }
  return count;
}

}  // namespace

unsigned long long oracle_count(const Board& b, int max_white) {
  std::vector<Cell> free_cells;
  for (Cell c : b.white_cells())
    if (!b.predrawn(c)) free_cells.push_back(c);
  if (static_cast<int>(free_cells.size()) > max_white)
    throw BoardError("oracle_count: board has " + std::to_string(free_cells.size()) +
                     " free white cells, above the limit of " + std::to_string(max_white));

  int stride = b.cols() + 1;
  if (stride * b.rows() > kMaxBits) return oracle_count_generic(b, free_cells);

  OracleCtx ctx;
  ctx.stride = stride;
  auto bit_of = [&](Cell c) { return (c.row - 1) * stride + (c.col - 1); };
  for (const Arrow& a : b.arrows()) {
    std::vector<int> path;
    for (Cell c : a.path) {
      ctx.arrow_cells.set(bit_of(c));
      path.push_back(bit_of(c));
    }
    ctx.paths.push_back(std::move(path));
  }
  BitGrid predrawn;
  for (Cell c : b.predrawn_cells()) predrawn.set(bit_of(c));
  std::vector<int> free_bits;
  for (Cell c : free_cells) free_bits.push_back(bit_of(c));

  size_t k = free_bits.size();
  std::uint64_t total = std::uint64_t{1} << k;

  unsigned hw = std::thread::hardware_concurrency();
  unsigned njobs = std::clamp<std::uint64_t>(hw ? hw : 1, 1, k >= 20 ? 8 : 1);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) -> unsigned long long {
    // Gray-code walk: squares tracks predrawn | gray(i) over the free cells.
    unsigned long long local = 0;
    BitGrid squares = predrawn;
    std::uint64_t gray = begin ^ (begin >> 1);
    for (size_t i = 0; i < k; ++i)
      if ((gray >> i) & 1) squares.flip(free_bits[i]);
    for (std::uint64_t m = begin; m < end; ++m) {
      // Quick necessary test: a lone square off every arrow kills R1.
      BitGrid isolated = squares & ~ctx.neighbors(squares);
      if (!(isolated & ~ctx.arrow_cells).any()) {
        if (ctx.accepts(squares)) ++local;
      }
      std::uint64_t next = (m + 1) ^ ((m + 1) >> 1);
      std::uint64_t diff = gray ^ next;
      if (diff) squares.flip(free_bits[std::countr_zero(diff)]);
      gray = next;
    }
    return local;
  };

  if (njobs <= 1 || total < 1024) return run_range(0, total);

  std::vector<unsigned long long> partial(njobs, 0);
  std::vector<std::thread> threads;
  std::uint64_t chunk = total / njobs;
  for (unsigned t = 0; t < njobs; ++t) {
    std::uint64_t begin = t * chunk;
    std::uint64_t end = (t + 1 == njobs) ? total : begin + chunk;
    threads.emplace_back([&, t, begin, end] { partial[t] = run_range(begin, end); });
  }
  for (auto& th : threads) th.join();
  unsigned long long count = 0;
  for (auto p : partial) count += p;
  return count;
}

}  // namespace evo
