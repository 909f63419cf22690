#pragma once

#include <vector>

#include "tdse/core.hpp"

namespace tdse::xform {

// Chebyshev expansions in tau/H of the diagonal-leg kernels:
//   exp(-(1+i) tau x_j) ~ sum_l lambda(l, j) T_l(tau/H)
//   exp(+(1+i) tau x_j) ~ sum_l rho(j, l) T_l(tau/H)
struct ChebPlan {
  double H = 0.0;
  int nc = 0;
  double residual = 0.0;  // max error relative to max |kernel| on a dense sample
  CMat lambda;            // nc x M
  CMat rho;               // M x nc
  CMat T;                 // NC x nc, T_l at the C-node parameters
};

// Starts at nc = ceil(2H) + 8 and doubles until residual <= tol.
ChebPlan build_cheb_plan(double H, const RVec& x, const std::vector<double>& tau_c, double tol);

}  // namespace tdse::xform
