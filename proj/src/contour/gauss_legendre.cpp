#include "tdse/contour/gauss_legendre.hpp"

#include <cmath>

#include "tdse/core.hpp"

namespace tdse::contour {

GaussRule gauss_legendre(int q) {
  if (q < 1 || q > 64) throw ConfigError("gauss_legendre: q must be in [1, 64]");
  GaussRule r;
  r.nodes.resize(q);
  r.weights.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    // Chebyshev guess for the i-th largest root, then Newton on P_q.
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // P_q = p1, P_{q-1} = p0
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[q - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[q - 1 - i] = w;
    r.weights[i] = w;
  }
  if (q % 2 == 1) r.nodes[q / 2] = 0.0;
  return r;
}

}  // namespace tdse::contour
