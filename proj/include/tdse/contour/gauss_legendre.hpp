#pragma once

#include <vector>

namespace tdse::contour {

struct GaussRule {
  std::vector<double> nodes;    // increasing, in (-1, 1)
  std::vector<double> weights;  // positive, sum to 2
};

// q-point Gauss-Legendre rule on [-1, 1], 1 <= q <= 64.
GaussRule gauss_legendre(int q);

}  // namespace tdse::contour
