#pragma once

#include <cstdint>
#include <vector>

namespace tdse::periodic {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return double(num) / double(den); }
};

// Implicit Adams rule of order n: int_{t}^{t+dt} g ~ dt sum_j mu_j g(t + dt - j dt),
// j = 0..n-1. Order 2 is the trapezoidal rule.
struct AdamsScheme {
  int n = 2;
  std::vector<double> mu;
  std::vector<Rational> mu_exact;

  static AdamsScheme of_order(int n);
};

}  // namespace tdse::periodic
