#pragma once

#include <functional>
#include <string>

namespace tdse::problems {

// Scalar potential sampled by the solvers; y is ignored in 1D.
struct Potential {
  std::function<double(double x, double y, double t)> eval;
  bool is_static = true;
  bool is_zero = true;

  double operator()(double x, double y, double t) const { return is_zero ? 0.0 : eval(x, y, t); }
};

struct PotentialSpec {
  enum class Kind { Zero, GaussianWell, MovingPeriodicWell };
  Kind kind = Kind::Zero;
  double V0 = 0.0;    // depth, V = -V0 exp(-|x|^2 / (2 beta^2))
  double beta = 1.0;  // width
  double c = 0.0;     // speed of the periodic well

  Potential to_potential() const;
  // max over t of the L2 norm of V on R^d (periodic case: over one cell).
  double l2_norm(int d) const;
};

PotentialSpec::Kind potential_kind_from_string(const std::string& s);
std::string to_string(PotentialSpec::Kind k);

}  // namespace tdse::problems
