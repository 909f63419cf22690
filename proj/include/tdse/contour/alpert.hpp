#pragma once

#include <vector>

namespace tdse::contour {

// Endpoint correction for the trapezoidal rule on [a, inf): the first kappa
// regular nodes are dropped and replaced by p nodes a + x_k h with weights
// w_k h. Converges at order 2p on smooth integrands.
struct AlpertRule {
  int p = 0;
  int kappa = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

// The tables carry 20 digits; the extended copy keeps them for tests that
// need to see below double roundoff.
struct AlpertRuleExt {
  int p = 0;
  int kappa = 0;
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

// Tabulated rules for p in {2, 4, 8}.
AlpertRule alpert_rule(int p);
AlpertRuleExt alpert_rule_extended(int p);

}  // namespace tdse::contour
