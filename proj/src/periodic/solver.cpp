#include "tdse/periodic/solver.hpp"

#include <cmath>

namespace tdse::periodic {

PeriodicSolver::PeriodicSolver(int d, int M, problems::Potential V, problems::FieldModel A,
                               int order, double dt)
    : d_(d), M_(M), n_(order), V_(std::move(V)), A_(std::move(A)),
      scheme_(AdamsScheme::of_order(order)), dt_(dt) {
  if (d != 1 && d != 2) throw ConfigError("periodic: d must be 1 or 2");
  if (M < 2 || M % 2 != 0) throw ConfigError("periodic: M must be even");
  if (order % 2 != 0) throw ConfigError("periodic: order must be even (Richardson startup)");
  if (!(dt > 0.0)) throw ConfigError("periodic: dt must be positive");
  x_.resize(M);
  for (int j = 0; j < M; ++j) x_[j] = -kPi + 2.0 * kPi * j / M;
  const int total = d == 1 ? M : M * M;
  k2_.resize(total);
  ka_.resize(total);
  auto wn = [M](int i) { return double(i < M / 2 ? i : i - M); };
  for (int i = 0; i < total; ++i) {
    const double k0 = wn(d == 1 ? i : i / M);
    const double k1 = d == 1 ? 0.0 : wn(i % M);
    k2_[i] = k0 * k0 + k1 * k1;
    ka_[i] = A_.axis() == 0 ? k0 : k1;
  }
  fwd_ = d == 1 ? xform::FftPlan(M, -1) : xform::FftPlan(M, M, -1);
  inv_ = d == 1 ? xform::FftPlan(M, +1) : xform::FftPlan(M, M, +1);
}

CVec PeriodicSolver::dft(const CVec& v) {
  CVec out(v.size());
  fwd_.execute(v.data(), out.data());
  ++ffts_;
  return out / double(v.size());
}

CVec PeriodicSolver::idft(const CVec& v) {
  CVec out(v.size());
  inv_.execute(v.data(), out.data());
  ++ffts_;
  return out;
}

const RVec& PeriodicSolver::potential_at(double t) {
  if (V_.is_static && V_cached_) return V_static_;
  RVec& dst = V_.is_static ? V_static_ : V_scratch_;
  const int total = static_cast<int>(k2_.size());
  dst.resize(total);
  for (int i = 0; i < total; ++i) {
    const double x = x_[d_ == 1 ? i : i / M_];
    const double y = d_ == 1 ? 0.0 : x_[i % M_];
    dst[i] = V_(x, y, t);
  }
  V_cached_ = V_.is_static;
  return dst;
}

// Free propagator over [t1 - span, t1]:
// exp(-i |k|^2 span + i k_a (phi(t1) - phi(t1 - span)))
CVec PeriodicSolver::phase(double t1, double span) const {
  const double dphi = A_.is_zero() ? 0.0 : A_.phi(t1) - A_.phi(std::max(0.0, t1 - span));
  CVec p(k2_.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = std::polar(1.0, -k2_[i] * span + ka_[i] * dphi);
  return p;
}

const CVec& PeriodicSolver::cached_phase(int j) {
  auto it = phase_cache_.find(j);
  if (it == phase_cache_.end()) it = phase_cache_.emplace(j, phase(0.0, j * dt_)).first;
  return it->second;
}

void PeriodicSolver::generic_step(PeriodicState& s, double dt, double t1,
                                  const std::vector<double>& mu) {
  const int n = static_cast<int>(mu.size());
  if (static_cast<int>(s.history.size()) < n - 1) {
    throw NumericsError("periodic: history too short, startup not performed");
  }
  const bool fixed = A_.is_zero() && dt == dt_;
  CVec B;
  for (int j = 1; j < n; ++j) {
    const CVec Pj = fixed ? cached_phase(j) : phase(t1, j * dt);
    if (j == 1) B = Pj.cwiseProduct(s.uhat);
    B -= (kI * dt * mu[j]) * Pj.cwiseProduct(s.history[j - 1]);
  }
  const RVec& V = potential_at(t1);
  const cplx c0 = kI * dt * mu[0];
  CVec den = (1.0 + c0 * V.array().cast<cplx>()).matrix();
  if (den.cwiseAbs().minCoeff() < 1e-14) {
    throw NumericsError("periodic: 1 + i mu0 dt V vanishes on the grid");
  }
  s.u = idft(B).cwiseQuotient(den);
  CVec W = dft(V.cast<cplx>().cwiseProduct(s.u));
  s.uhat = B - c0 * W;
  s.t = t1;
  s.history.push_front(std::move(W));
  while (static_cast<int>(s.history.size()) > std::max(1, n_ - 1)) s.history.pop_back();
}

void PeriodicSolver::initialize(const CVec& u0, double t0) {
  if (u0.size() != k2_.size()) throw ConfigError("periodic: initial data has wrong size");
  s_ = PeriodicState{};
  s_.t = t0;
  t0_ = t0;
  steps_ = 0;
  s_.u = u0;
  s_.uhat = dft(u0);
  const RVec& V = potential_at(t0);
  s_.history.push_front(dft(V.cast<cplx>().cwiseProduct(u0)));
}

void PeriodicSolver::step_trapezoidal(double dt) {
  generic_step(s_, dt, s_.t + dt, {0.5, 0.5});
  t0_ = s_.t;
  steps_ = 0;
}

// Step times are t0 + k dt rather than running sums, so a moving potential
// is sampled at the same instants however many steps are taken.
void PeriodicSolver::step_adams() {
  generic_step(s_, dt_, t0_ + (steps_ + 1) * dt_, scheme_.mu);
  ++steps_;
  s_.t = t0_ + steps_ * dt_;
}

void PeriodicSolver::richardson_step() {
  const int levels = n_ / 2;
  std::vector<CVec> tu(levels), th(levels);
  for (int i = 0; i < levels; ++i) {
    PeriodicState c;
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
  const RVec& V = potential_at(s_.t);
  s_.history.push_front(dft(V.cast<cplx>().cwiseProduct(s_.u)));
}

void PeriodicSolver::richardson_startup() {
  while (static_cast<int>(s_.history.size()) < n_ - 1) richardson_step();
}

void PeriodicSolver::step() {
  if (static_cast<int>(s_.history.size()) < n_ - 1) richardson_step();
  else step_adams();
}

void PeriodicSolver::advance(int steps) {
  for (int i = 0; i < steps; ++i) step();
}

double PeriodicSolver::norm() const {
  const double cell = std::pow(2.0 * kPi / M_, d_);
  return std::sqrt(cell * s_.u.squaredNorm());
}

}  // namespace tdse::periodic
