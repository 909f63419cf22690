#include "tdse/problems/potential.hpp"

#include <cmath>

#include "tdse/core.hpp"

namespace tdse::problems {

Potential PotentialSpec::to_potential() const {
  Potential p;
  if (kind == Kind::Zero || V0 == 0.0) return p;
  if (!(beta > 0.0)) throw ConfigError("potential: beta must be positive");
  const double V0_ = V0, b2 = 2.0 * beta * beta, c_ = c;
  p.is_zero = false;
  if (kind == Kind::GaussianWell) {
    p.eval = [V0_, b2](double x, double y, double) { return -V0_ * std::exp(-(x * x + y * y) / b2); };
    p.is_static = true;
  } else {
    // Periodic extension in x of a well moving with speed c.
    p.eval = [V0_, b2, c_](double x, double, double t) {
      double s = std::remainder(x - c_ * t, 2.0 * kPi);
      double v = 0.0;
      for (int k = -2; k <= 2; ++k) {
        const double d = s - 2.0 * kPi * k;
        v -= V0_ * std::exp(-d * d / b2);
      }
      return v;
    };
    p.is_static = c_ == 0.0;
  }
  return p;
}

double PotentialSpec::l2_norm(int d) const {
  if (kind == Kind::Zero) return 0.0;
  // int exp(-|x|^2/beta^2) dx = (sqrt(pi) beta)^d
  return std::abs(V0) * std::pow(std::sqrt(kPi) * beta, 0.5 * d);
}

PotentialSpec::Kind potential_kind_from_string(const std::string& s) {
  if (s == "zero") return PotentialSpec::Kind::Zero;
  if (s == "gaussian_well") return PotentialSpec::Kind::GaussianWell;
  if (s == "moving_periodic_gaussian_well") return PotentialSpec::Kind::MovingPeriodicWell;
  throw ConfigError("unknown potential kind '" + s + "'");
}

std::string to_string(PotentialSpec::Kind k) {
  switch (k) {
    case PotentialSpec::Kind::Zero: return "zero";
    case PotentialSpec::Kind::GaussianWell: return "gaussian_well";
    case PotentialSpec::Kind::MovingPeriodicWell: return "moving_periodic_gaussian_well";
  }
  return "zero";
}

}  // namespace tdse::problems
