#pragma once

// ASCII and SVG board rendering, deterministic byte-for-byte.

#include <string>

#include "evolomino/board.hpp"

namespace evo {

struct RenderOptions {
  enum class Format { Ascii, Svg };
  Format format = Format::Ascii;
  int cell_px = 24;
  bool show_arrows = true;
  const Solution* overlay = nullptr;
};

std::string render(const Board& b, const RenderOptions& opts = {});

}  // namespace evo
