#include "evolomino/verifier.hpp"

#include <algorithm>

namespace evo {

namespace {

std::string cell_str(Cell c) {
  return std::to_string(c.row) + "," + std::to_string(c.col);
}

// Block id per cell, -1 where empty; ids follow blocks_of order.
std::vector<int> block_id_grid(const Board& b, const std::vector<Block>& blocks) {
  std::vector<int> ids(static_cast<size_t>(b.rows()) * b.cols(), -1);
  for (size_t i = 0; i < blocks.size(); ++i)
    for (Cell c : blocks[i].cells) ids[b.index(c)] = static_cast<int>(i);
  return ids;
}

}  // namespace

std::string to_string(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
  }
  return "?";
}

std::string format_violation(const Violation& v) {
  return to_string(v.rule) + " @ " + v.subject + ": " + v.message;
}

ArrowBlockSequence arrow_block_sequence(const Board& b, const Solution& s, int arrow_index) {
  auto blocks = blocks_of(b, s);
  auto ids = block_id_grid(b, blocks);

  ArrowBlockSequence seq;
  seq.arrow = arrow_index;
  const Arrow& a = b.arrows()[arrow_index];
  int prev_id = -1;
  std::vector<char> seen(blocks.size(), 0);
  for (Cell c : a.path) {
    int id = ids[b.index(c)];
    if (id < 0) {
      prev_id = -1;
      continue;
    }
    if (id == prev_id) continue;
    if (seen[id]) {
      seq.error = "block-revisit: block " + cell_str(blocks[id].anchor()) +
                  " occurs in two non-adjacent runs of arrow " + std::to_string(arrow_index + 1);
      return seq;
    }
    seen[id] = 1;
    seq.blocks.push_back(blocks[id]);
    prev_id = id;
  }
  return seq;
}

VerificationReport verify(const Board& b, const Solution& s) {
  VerificationReport report;
  auto add = [&](Rule r, std::string subject, std::string message) {
    report.violations.push_back({r, std::move(subject), std::move(message)});
  };

  auto blocks = blocks_of(b, s);
  auto ids = block_id_grid(b, blocks);

  // R1: every block has exactly one square on an arrow cell.
  for (const Block& blk : blocks) {
    int on_arrow = 0;
    for (Cell c : blk.cells)
      if (b.on_arrow(c)) ++on_arrow;
    if (on_arrow != 1)
      add(Rule::R1, "block " + cell_str(blk.anchor()),
          "block has " + std::to_string(on_arrow) + " squares on arrows, expected exactly 1");
  }

  for (size_t ai = 0; ai < b.arrows().size(); ++ai) {
    ArrowBlockSequence seq;
    {
      // Inline sequence walk sharing the block decomposition above.
      seq.arrow = static_cast<int>(ai);
      int prev_id = -1;
      std::vector<char> seen(blocks.size(), 0);
      for (Cell c : b.arrows()[ai].path) {
        int id = ids[b.index(c)];
        if (id < 0) {
          prev_id = -1;
          continue;
        }
        if (id == prev_id) continue;
        if (seen[id]) {
          seq.error = "block-revisit: block " + cell_str(blocks[id].anchor()) +
                      " occurs in two non-adjacent runs";
          break;
        }
        seen[id] = 1;
        seq.blocks.push_back(blocks[id]);
        prev_id = id;
      }
    }
    std::string subject = "arrow " + std::to_string(ai + 1);
    if (seq.error) {
      add(Rule::R3, subject, *seq.error);
      continue;
    }
    if (seq.blocks.size() < 2)
      add(Rule::R2, subject,
          "arrow passes through " + std::to_string(seq.blocks.size()) + " blocks, expected >= 2");
    for (size_t i = 0; i + 1 < seq.blocks.size(); ++i) {
      Shape prev = shape_of(seq.blocks[i]);
      Shape next = shape_of(seq.blocks[i + 1]);
      if (!extends_by_one(prev, next))
        add(Rule::R3, subject,
            "block " + cell_str(seq.blocks[i + 1].anchor()) + " (size " +
                std::to_string(next.size()) + ") does not extend block " +
                cell_str(seq.blocks[i].anchor()) + " (size " + std::to_string(prev.size()) +
                ") by one square");
    }
  }

  report.valid = report.violations.empty();
  return report;
}

}  // namespace evo
