#pragma once

#include <utility>
#include <vector>

#include "tdse/core.hpp"

namespace tdse::harness {

// sqrt(sum |u - ref|^2 (2L/M)^d) on the M^d grid covering [-L, L)^d.
// Both arrays hold the same number of points; d is 1 or 2.
double l2_error(const CVec& u, const CVec& ref, int d, double L);
double l2_error(const CMat& u, const CMat& ref, int d, double L);

struct ErrorReport {
  std::vector<std::pair<double, double>> rows;  // (t, E(t))
  double Emax = 0.0;
  double wall_seconds = 0.0;
  double steps_per_second = 0.0;

  void add(double t, double E);
  double final_error() const { return rows.empty() ? 0.0 : rows.back().second; }
};

// order_i = log(E_{i-1} / E_i) / log(p_{i-1} / p_i); the first entry has no
// order and is NaN.
std::vector<double> observed_orders(const std::vector<double>& param,
                                    const std::vector<double>& err);

}  // namespace tdse::harness
