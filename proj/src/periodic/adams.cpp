#include "tdse/periodic/adams.hpp"

#include <numeric>

#include "tdse/core.hpp"

namespace tdse::periodic {

namespace {

Rational reduce(std::int64_t n, std::int64_t d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  return {n / g, d / g};
}

Rational add(Rational a, Rational b) {
  const std::int64_t l = std::lcm(a.den, b.den);
  return reduce(a.num * (l / a.den) + b.num * (l / b.den), l);
}

}  // namespace

AdamsScheme AdamsScheme::of_order(int n) {
  if (n < 2 || n > 8) throw ConfigError("Adams order must be in [2, 8]");
  AdamsScheme s;
  s.n = n;
  // Lagrange basis on nodes s_m = -m over [-1, 0]:
  // l_j(s) = prod_{m != j} (s + m) / (m - j).
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> poly{1};  // integer coefficients, ascending
    std::int64_t den = 1;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      std::vector<std::int64_t> next(poly.size() + 1, 0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k] * m;
        next[k + 1] += poly[k];
      }
      poly = std::move(next);
      den *= (m - j);
    }
    // int_{-1}^0 s^k ds = (-1)^k / (k + 1)
    Rational acc{0, 1};
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
      acc = add(acc, reduce(sign * poly[k], std::int64_t(k + 1)));
    }
    const Rational mu = reduce(acc.num, acc.den * den);
    s.mu_exact.push_back(mu);
    s.mu.push_back(mu.value());
  }
  return s;
}

}  // namespace tdse::periodic
