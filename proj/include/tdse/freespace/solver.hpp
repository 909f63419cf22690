#pragma once

#include <array>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "tdse/contour/quadrature.hpp"
#include "tdse/periodic/adams.hpp"
#include "tdse/problems/field.hpp"
#include "tdse/problems/potential.hpp"
#include "tdse/xform/transform.hpp"

namespace tdse::freespace {

// Grid values u (M0 x M1; 1D: M x 1) and contour coefficients uhat
// (N0 x N1; 1D: N x 1). history[j] = (2/M)^d forward(V u) at t - j dt.
struct FreeState {
  double t = 0.0;
  CMat u;
  CMat uhat;
  std::deque<CMat> history;
};

// exp(-i z^2 span + i z dphi) with the complex square z*z.
cplx spectral_propagator(cplx z, double span, double dphi);

class FreeSolver {
 public:
  FreeSolver(std::shared_ptr<const contour::GammaQuadrature> q, problems::Potential V,
             problems::FieldModel A, int order, double dt, xform::TransformOptions opts = {});
  FreeSolver(std::shared_ptr<const contour::GammaQuadrature> q0,
             std::shared_ptr<const contour::GammaQuadrature> q1, problems::Potential V,
             problems::FieldModel A, int order, double dt, xform::TransformOptions opts = {});

  // u0 must be numerically supported in [-1, 1]^d.
  void initialize(const CMat& u0, double t0 = 0.0);
  void step();
  void advance(int steps);
  void step_trapezoidal(double dt);
  void step_adams();
  void richardson_startup();

  // u(x) = (2 pi)^-d sum exp(i zeta . x) uhat w on a node set refined by
  // ceil(R_ext); points must satisfy |x_i| <= R_ext.
  CVec evaluate_exterior(const std::vector<std::array<double, 2>>& points, double R_ext) const;

  const FreeState& state() const { return s_; }
  int d() const { return d_; }
  double dt() const { return dt_; }
  const contour::GammaQuadrature& quad(int axis) const { return *q_[axis]; }
  const RVec& grid(int axis) const { return x_[axis]; }
  // 1 - int_{[-1,1]^d} |u|^2 by the left-endpoint rule.
  double ionization_fraction() const;
  long forward_calls() const;
  long inverse_calls() const;

 private:
  CMat forward(const CMat& f) const;
  CMat inverse(const CMat& fhat) const;
  CMat sample_potential(double t) const;
  CMat propagator(double t1, double span) const;
  const CMat& cached_propagator(int j);
  void generic_step(FreeState& s, double dt, double t1, const std::vector<double>& mu);
  void richardson_step();
  CMat potential_transform(const CMat& V, const CMat& u) const;

  int d_;
  std::array<std::shared_ptr<const contour::GammaQuadrature>, 2> q_;
  problems::Potential V_;
  problems::FieldModel A_;
  int n_;
  periodic::AdamsScheme scheme_;
  double dt_;
  std::optional<xform::Transform1D> t1d_;
  std::optional<xform::Transform2D> t2d_;
  std::array<RVec, 2> x_;
  std::array<CVec, 2> z_;
  CMat weights_;
  double fwd_scale_ = 1.0;  // (2/M)^d
  double inv_scale_ = 1.0;  // (2 pi)^-d
  FreeState s_;
  mutable std::optional<CMat> V_static_;
  std::map<int, CMat> prop_cache_;
  double t0_ = 0.0;
  long steps_ = 0;
};

}  // namespace tdse::freespace
