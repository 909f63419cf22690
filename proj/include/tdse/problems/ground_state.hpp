#pragma once

#include <functional>
#include <memory>

#include "tdse/core.hpp"
#include "tdse/problems/potential.hpp"

namespace tdse::problems {

// Lowest eigenpair of -d^2/dx^2 + V, L2-normalized, evaluable anywhere.
class GroundState {
 public:
  double eigenvalue = 0.0;
  double residual = 0.0;  // L2 norm of (H - E) u for the normalized u
  RVec nodes;             // discretization points
  RVec values;            // u at the nodes

  // 1D: x; radial: r = |x|.
  double operator()(double s) const { return eval_(s); }

 private:
  friend GroundState ground_state_1d(const std::function<double(double)>&, int);
  friend GroundState ground_state_radial(const std::function<double(double)>&, double, int);
  std::function<double(double)> eval_;
};

// Fourier pseudo-spectral discretization on the periodic cell [-pi, pi],
// dense symmetric eigensolve.
GroundState ground_state_1d(const std::function<double(double)>& V, int M_eig = 1024);

// Radially symmetric 2D problem u'' + u'/r on [0, R] with u(R) = 0, using
// Chebyshev collocation on [-R, R] folded onto even functions (N odd).
GroundState ground_state_radial(const std::function<double(double)>& V, double R = 1.5,
                                int N = 251);

// Memoized front ends for the Gaussian wells.
std::shared_ptr<const GroundState> ground_state(const PotentialSpec& spec, int d);

}  // namespace tdse::problems
