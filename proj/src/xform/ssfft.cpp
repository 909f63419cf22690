#include "tdse/xform/ssfft.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

namespace tdse::xform {

namespace {

bool smooth(long n, std::initializer_list<int> primes) {
  for (int p : primes)
    while (n % p == 0) n /= p;
  return n == 1;
}

int smooth_at_least(int n) {
  while (!smooth(n, {2, 3, 5})) ++n;
  return n;
}

}  // namespace

SSFFTPlan::SSFFTPlan(int m, int n, int nu, double alpha, double beta)
    : m_(m), n_(n), nu_(nu), alpha_(alpha), beta_(beta) {
  if (m < 1 || n < 1) throw ConfigError("ssfft: sizes must be positive");
  if (nu < m || nu < n) throw ConfigError("ssfft: nu must be >= max(m, n)");
  const double lhs = (beta - alpha) * nu;
  const double rhs = kPi * double(m) * double(n);
  if (std::abs(lhs - rhs) > 1e-12 * rhs) {
    throw ConfigError("ssfft: resonance (beta-alpha)/(m n) = pi/nu violated");
  }
  const double d = (beta - alpha) / n;
  pre_fwd_.resize(m);
  post_inv_.resize(m);
  for (int j = 0; j < m; ++j) {
    pre_fwd_[j] = std::polar(1.0, -2.0 * alpha * j / m);
    post_inv_[j] = std::polar(1.0, alpha * (-1.0 + 2.0 * j / m));
  }
  post_fwd_.resize(n);
  pre_inv_.resize(n);
  for (int k = 0; k < n; ++k) {
    post_fwd_[k] = std::polar(1.0, alpha + d * k);
    pre_inv_[k] = std::polar(1.0, -d * k);
  }
  fwd_ = FftPlan(nu, -1);
  inv_ = FftPlan(nu, +1);
  if (!smooth(nu, {2, 3, 5, 7})) {
    L_ = smooth_at_least(m + n - 1);
    const int s_max = std::max(m, n);
    // s^2 mod 2 nu in integers keeps the chirp phase exact for large s
    auto phase = [nu](long s) {
      const long r = (s * s) % (2L * nu);
      return std::polar(1.0, -kPi * double(r) / nu);
    };
    chirp_.resize(s_max);
    for (int s = 0; s < s_max; ++s) chirp_[s] = phase(s);
    // linear convolution over lags -(nin - 1) .. nout - 1, wrapped into L
    auto kernel = [&](int nin, int nout, int sign) {
      std::vector<cplx> h(L_, cplx(0.0)), hat(L_);
      for (int s = -(nin - 1); s < nout; ++s) {
        const cplx g = std::conj(phase(std::abs(s)));
        h[(s + L_) % L_] = sign < 0 ? g : std::conj(g);
      }
      FftPlan(L_, -1).execute(h.data(), hat.data());
      for (auto& v : hat) v /= double(L_);
      return hat;
    };
    kern_fwd_hat_ = kernel(m, n, -1);
    kern_inv_hat_ = kernel(n, m, +1);
    cfwd_ = FftPlan(L_, -1);
    cinv_ = FftPlan(L_, +1);
  }
}

// exp(sign 2 pi i j k / nu) = c_j c_k conj(c_{k-j}) with c_s = exp(sign i pi s^2 / nu)
void SSFFTPlan::chirp_dft(const cplx* in, int nin, cplx* out, int nout, int sign) const {
  thread_local std::vector<cplx> a, b;
  a.assign(L_, cplx(0.0));
  b.resize(L_);
  auto c = [&](int s) { return sign < 0 ? chirp_[s] : std::conj(chirp_[s]); };
  for (int j = 0; j < nin; ++j) a[j] = in[j] * c(j);
  cfwd_.execute(a.data(), b.data());
  const auto& kh = sign < 0 ? kern_fwd_hat_ : kern_inv_hat_;
  for (int i = 0; i < L_; ++i) b[i] *= kh[i];
  cinv_.execute(b.data(), a.data());
  for (int k = 0; k < nout; ++k) out[k] = a[k] * c(k);
}

SSFFTPlan SSFFTPlan::with_spacing(int m, int n, double alpha, double delta) {
  const double nu_real = kPi * m / delta;
  const long nu = std::lround(nu_real);
  if (std::abs(nu_real - nu) > 1e-9 * nu_real) {
    throw ConfigError("ssfft: spacing does not give an integer FFT length (" +
                      std::to_string(nu_real) + ")");
  }
  return SSFFTPlan(m, n, static_cast<int>(nu), alpha, alpha + n * delta);
}

void SSFFTPlan::forward(const cplx* c, cplx* out) const {
  if (L_ > 0) {
    thread_local std::vector<cplx> t;
    t.resize(m_);
    for (int j = 0; j < m_; ++j) t[j] = c[j] * pre_fwd_[j];
    chirp_dft(t.data(), m_, out, n_, -1);
    for (int k = 0; k < n_; ++k) out[k] *= post_fwd_[k];
    return;
  }
  thread_local std::vector<cplx> a, b;
  a.assign(nu_, cplx(0.0));
  b.resize(nu_);
  for (int j = 0; j < m_; ++j) a[j] = c[j] * pre_fwd_[j];
  fwd_.execute(a.data(), b.data());
  for (int k = 0; k < n_; ++k) out[k] = b[k] * post_fwd_[k];
}

void SSFFTPlan::inverse(const cplx* chat, cplx* out) const {
  if (L_ > 0) {
    thread_local std::vector<cplx> t;
    t.resize(n_);
    for (int k = 0; k < n_; ++k) t[k] = chat[k] * pre_inv_[k];
    chirp_dft(t.data(), n_, out, m_, +1);
    for (int j = 0; j < m_; ++j) out[j] *= post_inv_[j];
    return;
  }
  thread_local std::vector<cplx> a, b;
  a.assign(nu_, cplx(0.0));
  b.resize(nu_);
  for (int k = 0; k < n_; ++k) a[k] = chat[k] * pre_inv_[k];
  inv_.execute(a.data(), b.data());
  for (int j = 0; j < m_; ++j) out[j] = b[j] * post_inv_[j];
}

SSFFT2DPlan::SSFFT2DPlan(const SSFFTPlan& p0, const SSFFTPlan& p1)
    : p0_(p0), p1_(p1), fwd_(p0.nu(), p1.nu(), -1), inv_(p0.nu(), p1.nu(), +1) {}

void SSFFT2DPlan::forward(const cplx* c, const double* s0, const double* s1, cplx* out) const {
  const int m0 = p0_.m_, m1 = p1_.m_, n0 = p0_.n_, n1 = p1_.n_, nu1 = p1_.nu_;
  // Plain locals: a thread_local would resolve per thread inside the
  // parallel loops below.
  std::vector<cplx> a(std::size_t(p0_.nu_) * nu1, cplx(0.0)), b(a.size());
#pragma omp parallel for schedule(static)
  for (int j0 = 0; j0 < m0; ++j0) {
    const cplx r = p0_.pre_fwd_[j0] * (s0 ? s0[j0] : 1.0);
    for (int j1 = 0; j1 < m1; ++j1) {
      a[std::size_t(j0) * nu1 + j1] =
          c[std::size_t(j0) * m1 + j1] * r * p1_.pre_fwd_[j1] * (s1 ? s1[j1] : 1.0);
    }
  }
  fwd_.execute(a.data(), b.data());
#pragma omp parallel for schedule(static)
  for (int k0 = 0; k0 < n0; ++k0) {
    const cplx r = p0_.post_fwd_[k0];
    for (int k1 = 0; k1 < n1; ++k1) {
      out[std::size_t(k0) * n1 + k1] = b[std::size_t(k0) * nu1 + k1] * r * p1_.post_fwd_[k1];
    }
  }
}

void SSFFT2DPlan::inverse_add(const cplx* chat, const double* s0, const double* s1,
                              cplx* out) const {
  const int m0 = p0_.m_, m1 = p1_.m_, n0 = p0_.n_, n1 = p1_.n_, nu1 = p1_.nu_;
  // Plain locals: a thread_local would resolve per thread inside the
  // parallel loops below.
  std::vector<cplx> a(std::size_t(p0_.nu_) * nu1, cplx(0.0)), b(a.size());
#pragma omp parallel for schedule(static)
  for (int k0 = 0; k0 < n0; ++k0) {
    const cplx r = p0_.pre_inv_[k0];
    for (int k1 = 0; k1 < n1; ++k1) {
      a[std::size_t(k0) * nu1 + k1] = chat[std::size_t(k0) * n1 + k1] * r * p1_.pre_inv_[k1];
    }
  }
  inv_.execute(a.data(), b.data());
#pragma omp parallel for schedule(static)
  for (int j0 = 0; j0 < m0; ++j0) {
    const cplx r = p0_.post_inv_[j0] * (s0 ? s0[j0] : 1.0);
    for (int j1 = 0; j1 < m1; ++j1) {
      out[std::size_t(j0) * m1 + j1] +=
          b[std::size_t(j0) * nu1 + j1] * r * p1_.post_inv_[j1] * (s1 ? s1[j1] : 1.0);
    }
  }
}

}  // namespace tdse::xform
