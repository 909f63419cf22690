#include "tdse/freespace/solver.hpp"

#include <cfloat>
#include <cmath>

namespace tdse::freespace {

cplx spectral_propagator(cplx z, double span, double dphi) {
  return std::exp(-kI * (z * z) * span + kI * z * dphi);
}

namespace {

CVec to_vec(const std::vector<cplx>& v) {
  return Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

FreeSolver::FreeSolver(std::shared_ptr<const contour::GammaQuadrature> q, problems::Potential V,
                       problems::FieldModel A, int order, double dt, xform::TransformOptions opts)
    : d_(1), V_(std::move(V)), A_(std::move(A)), n_(order),
      scheme_(periodic::AdamsScheme::of_order(order)), dt_(dt) {
  if (order % 2 != 0) throw ConfigError("free: order must be even (Richardson startup)");
  if (!(dt > 0.0)) throw ConfigError("free: dt must be positive");
  if (A_.axis() != 0) throw ConfigError("free: 1D field must act along axis 0");
  q_[0] = q;
  t1d_.emplace(q, opts);
  x_[0] = xform::physical_grid(q->M());
  x_[1] = RVec::Zero(1);
  z_[0] = to_vec(q->all_nodes());
  z_[1] = CVec::Zero(1);
  weights_ = to_vec(q->all_weights());
  fwd_scale_ = 2.0 / q->M();
  inv_scale_ = 1.0 / (2.0 * kPi);
}

FreeSolver::FreeSolver(std::shared_ptr<const contour::GammaQuadrature> q0,
                       std::shared_ptr<const contour::GammaQuadrature> q1, problems::Potential V,
                       problems::FieldModel A, int order, double dt, xform::TransformOptions opts)
    : d_(2), V_(std::move(V)), A_(std::move(A)), n_(order),
      scheme_(periodic::AdamsScheme::of_order(order)), dt_(dt) {
  if (order % 2 != 0) throw ConfigError("free: order must be even (Richardson startup)");
  if (!(dt > 0.0)) throw ConfigError("free: dt must be positive");
  q_ = {q0, q1};
  t2d_.emplace(q0, q1, opts);
  for (int a = 0; a < 2; ++a) {
    x_[a] = xform::physical_grid(q_[a]->M());
    z_[a] = to_vec(q_[a]->all_nodes());
  }
  weights_ = to_vec(q0->all_weights()) * to_vec(q1->all_weights()).transpose();
  fwd_scale_ = 4.0 / (double(q0->M()) * q1->M());
  inv_scale_ = 1.0 / (4.0 * kPi * kPi);
}

CMat FreeSolver::forward(const CMat& f) const {
  if (d_ == 1) return t1d_->forward(f.col(0));
  return t2d_->forward(f);
}

CMat FreeSolver::inverse(const CMat& fhat) const {
  if (d_ == 1) return t1d_->inverse(CVec(fhat.col(0)));
  return t2d_->inverse(fhat);
}

long FreeSolver::forward_calls() const {
  return d_ == 1 ? t1d_->forward_calls() : t2d_->forward_calls();
}

long FreeSolver::inverse_calls() const {
  return d_ == 1 ? t1d_->inverse_calls() : t2d_->inverse_calls();
}

CMat FreeSolver::sample_potential(double t) const {
  if (V_.is_static && V_static_) return *V_static_;
  const auto M0 = x_[0].size(), M1 = x_[1].size();
  CMat V(M0, M1);
  for (Eigen::Index i = 0; i < M0; ++i) {
    for (Eigen::Index j = 0; j < M1; ++j) V(i, j) = V_(x_[0][i], d_ == 2 ? x_[1][j] : 0.0, t);
  }
  if (V_.is_static) V_static_ = V;
  return V;
}

// Separable free propagator over [t1 - span, t1] on the node grid.
CMat FreeSolver::propagator(double t1, double span) const {
  const double dphi = A_.is_zero() ? 0.0 : A_.phi(t1) - A_.phi(std::max(0.0, t1 - span));
  std::array<CVec, 2> g;
  for (int a = 0; a < 2; ++a) {
    g[a].resize(z_[a].size());
    const double da = a == A_.axis() ? dphi : 0.0;
    for (Eigen::Index k = 0; k < z_[a].size(); ++k) {
      g[a][k] = (a < d_) ? spectral_propagator(z_[a][k], span, da) : cplx(1.0);
    }
  }
  return g[0] * g[1].transpose();
}

const CMat& FreeSolver::cached_propagator(int j) {
  auto it = prop_cache_.find(j);
  if (it == prop_cache_.end()) it = prop_cache_.emplace(j, propagator(0.0, j * dt_)).first;
  return it->second;
}

CMat FreeSolver::potential_transform(const CMat& V, const CMat& u) const {
  if (V_.is_zero) return CMat::Zero(weights_.rows(), weights_.cols());
  return fwd_scale_ * forward(V.cwiseProduct(u));
}

void FreeSolver::generic_step(FreeState& s, double dt, double t1, const std::vector<double>& mu) {
  const int n = static_cast<int>(mu.size());
  if (static_cast<int>(s.history.size()) < n - 1) {
    throw NumericsError("free: history too short, startup not performed");
  }
  const bool fixed = A_.is_zero() && dt == dt_;
  CMat B;
  for (int j = 1; j < n; ++j) {
    const CMat Gj = fixed ? cached_propagator(j) : propagator(t1, j * dt);
    if (j == 1) B = Gj.cwiseProduct(s.uhat);
    if (!V_.is_zero) B -= (kI * dt * mu[j]) * Gj.cwiseProduct(s.history[j - 1]);
  }
  const CMat V = sample_potential(t1);
  const cplx c0 = kI * dt * mu[0];
  const CMat den = (1.0 + c0 * V.array()).matrix();
  if (den.cwiseAbs().minCoeff() < 1e-14) throw NumericsError("free: 1 + i mu0 dt V vanishes");
  s.u = (inv_scale_ * inverse(weights_.cwiseProduct(B))).cwiseQuotient(den);
  CMat W = potential_transform(V, s.u);
  s.uhat = B - c0 * W;
  s.t = t1;
  s.history.push_front(std::move(W));
  while (static_cast<int>(s.history.size()) > std::max(1, n_ - 1)) s.history.pop_back();
}

void FreeSolver::initialize(const CMat& u0, double t0) {
  if (u0.rows() != x_[0].size() || u0.cols() != x_[1].size()) {
    throw ConfigError("free: initial data has wrong shape");
  }
  const double tol = std::sqrt(q_[0]->cfg.eps);
  double ring = u0.row(0).cwiseAbs().maxCoeff();
  ring = std::max(ring, u0.row(u0.rows() - 1).cwiseAbs().maxCoeff());
  if (d_ == 2) {
    ring = std::max(ring, u0.col(0).cwiseAbs().maxCoeff());
    ring = std::max(ring, u0.col(u0.cols() - 1).cwiseAbs().maxCoeff());
  }
  if (ring > tol) {
    throw ConfigError("free: initial data is not supported in the box (edge magnitude " +
                      std::to_string(ring) + ")");
  }
  s_ = FreeState{};
  s_.t = t0;
  t0_ = t0;
  steps_ = 0;
  s_.u = u0;
  s_.uhat = fwd_scale_ * forward(u0);
  s_.history.push_front(potential_transform(sample_potential(t0), u0));
}

void FreeSolver::step_trapezoidal(double dt) {
  generic_step(s_, dt, s_.t + dt, {0.5, 0.5});
  t0_ = s_.t;
  steps_ = 0;
}

void FreeSolver::step_adams() {
  generic_step(s_, dt_, t0_ + (steps_ + 1) * dt_, scheme_.mu);
  ++steps_;
  s_.t = t0_ + steps_ * dt_;
}

// Extrapolates both the grid values and the contour coefficients; the
// history entry is rebuilt from the extrapolated grid values.
void FreeSolver::richardson_step() {
  const int levels = n_ / 2;
  std::vector<CMat> tu(levels), th(levels);
  for (int i = 0; i < levels; ++i) {
    FreeState c;
    c.t = s_.t;
    c.u = s_.u;
    c.uhat = s_.uhat;
    c.history = {s_.history.front()};
    const int sub = 1 << i;
    for (int k = 0; k < sub; ++k) generic_step(c, dt_ / sub, s_.t + (k + 1) * dt_ / sub, {0.5, 0.5});
    tu[i] = std::move(c.u);
    th[i] = std::move(c.uhat);
  }
  for (int m = 0; m + 1 < levels; ++m) {
    const double f = std::pow(4.0, m + 1);
    for (int i = 0; i + 1 < levels - m; ++i) {
      tu[i] = (f * tu[i + 1] - tu[i]) / (f - 1.0);
      th[i] = (f * th[i + 1] - th[i]) / (f - 1.0);
    }
  }
  ++steps_;
  s_.t = t0_ + steps_ * dt_;
  s_.u = std::move(tu[0]);
  s_.uhat = std::move(th[0]);
  s_.history.push_front(potential_transform(sample_potential(s_.t), s_.u));
}

void FreeSolver::richardson_startup() {
  while (static_cast<int>(s_.history.size()) < n_ - 1) richardson_step();
}

void FreeSolver::step() {
  if (static_cast<int>(s_.history.size()) < n_ - 1) richardson_step();
  else step_adams();
}

void FreeSolver::advance(int steps) {
  for (int i = 0; i < steps; ++i) step();
}

double FreeSolver::ionization_fraction() const {
  double cell = 2.0 / q_[0]->M();
  if (d_ == 2) cell *= 2.0 / q_[1]->M();
  return 1.0 - cell * s_.u.squaredNorm();
}

}  // namespace tdse::freespace
