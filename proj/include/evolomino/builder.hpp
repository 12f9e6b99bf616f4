#pragma once

// Helper for assembling boards in y-up coordinates (y = 1 is the bottom row,
// as drawn in most construction sketches); build() flips to row-down cells.
// Everything starts shaded; structures carve out white cells and arrows.

#include <utility>
#include <vector>

#include "evolomino/board.hpp"

namespace evo {

class BoardBuilder {
 public:
  BoardBuilder(int cols, int height)
      : cols_(cols), height_(height),
        kind_(static_cast<size_t>(cols) * height, CellKind::Shaded) {}

  int cols() const { return cols_; }
  int height() const { return height_; }

  void white(int col, int y) {
    if (at(col, y) == CellKind::Shaded) at(col, y) = CellKind::White;
  }
  void predrawn(int col, int y) { at(col, y) = CellKind::Predrawn; }
  void shade(int col, int y) { at(col, y) = CellKind::Shaded; }

  // Whitens the path; returns the arrow index.
  int add_arrow(const std::vector<std::pair<int, int>>& path) {
    Arrow a;
    for (auto [col, y] : path) {
      white(col, y);
      a.path.push_back(to_cell(col, y));
    }
    arrows_.push_back(std::move(a));
    return static_cast<int>(arrows_.size() - 1);
  }

  Cell to_cell(int col, int y) const { return {height_ - y + 1, col}; }

  Board build() const {
    Board b(height_, cols_);
    for (int col = 1; col <= cols_; ++col)
      for (int y = 1; y <= height_; ++y)
        b.set_kind(to_cell(col, y), at(col, y));
    b.arrows() = arrows_;
    b.validate();
    return b;
  }

 private:
  CellKind& at(int col, int y) {
    return kind_[static_cast<size_t>(col - 1) * height_ + (y - 1)];
  }
  const CellKind& at(int col, int y) const {
    return kind_[static_cast<size_t>(col - 1) * height_ + (y - 1)];
  }

  int cols_, height_;
  std::vector<CellKind> kind_;
  std::vector<Arrow> arrows_;
};

}  // namespace evo
