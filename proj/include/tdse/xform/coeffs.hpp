#pragma once

#include <array>

#include "tdse/contour/quadrature.hpp"
#include "tdse/core.hpp"

namespace tdse::xform {

using contour::Block;

struct BlockLayout {
  std::array<int, 5> offset{};
  std::array<int, 5> size{};
  int total = 0;

  static BlockLayout of(const contour::GammaQuadrature& q);
  int off(Block b) const { return offset[contour::index(b)]; }
  int len(Block b) const { return size[contour::index(b)]; }
};

// Coefficients on the 1D contour nodes, stored contiguously in block order.
struct SpectralCoeffs1D {
  BlockLayout layout;
  CVec values;

  auto block(Block b) { return values.segment(layout.off(b), layout.len(b)); }
  auto block(Block b) const { return values.segment(layout.off(b), layout.len(b)); }
};

// Coefficients on the tensor nodes; block (b0, b1) is a sub-matrix view.
struct SpectralCoeffs2D {
  BlockLayout rows, cols;
  CMat values;

  auto block(Block b0, Block b1) {
    return values.block(rows.off(b0), cols.off(b1), rows.len(b0), cols.len(b1));
  }
  auto block(Block b0, Block b1) const {
    return values.block(rows.off(b0), cols.off(b1), rows.len(b0), cols.len(b1));
  }
};

// x_j = -1 + 2j/M, j = 0..M-1
RVec physical_grid(int M);

}  // namespace tdse::xform
