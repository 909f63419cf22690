#include "tdse/xform/chebyshev.hpp"

#include <cmath>
#include <string>

namespace tdse::xform {

namespace {

void cheb_values(double s, int nc, double* out) {
  out[0] = 1.0;
  if (nc > 1) out[1] = s;
  for (int l = 2; l < nc; ++l) out[l] = 2.0 * s * out[l - 1] - out[l - 2];
}

ChebPlan fit(double H, const RVec& x, int nc) {
  const int M = static_cast<int>(x.size());
  ChebPlan p;
  p.H = H;
  p.nc = nc;
  p.lambda.setZero(nc, M);
  p.rho.setZero(M, nc);
  const cplx a(1.0, 1.0);
  for (int m = 0; m < nc; ++m) {
    const double th = kPi * (m + 0.5) / nc;
    const double tau = H * std::cos(th);
    for (int j = 0; j < M; ++j) {
      const cplx gm = std::exp(-a * tau * x[j]);
      const cplx gp = std::exp(a * tau * x[j]);
      for (int l = 0; l < nc; ++l) {
        const double c = std::cos(l * th) * (l == 0 ? 1.0 : 2.0) / nc;
        p.lambda(l, j) += c * gm;
        p.rho(j, l) += c * gp;
      }
    }
  }
  constexpr int ns = 257;
  std::vector<double> T(nc);
  double xmax = 0.0;
  for (int j = 0; j < M; ++j) xmax = std::max(xmax, std::abs(x[j]));
  const double scale = std::exp(H * xmax);
  double worst = 0.0;
  for (int s = 0; s < ns; ++s) {
    const double u = -1.0 + 2.0 * s / (ns - 1);
    cheb_values(u, nc, T.data());
    for (int j = 0; j < M; ++j) {
      cplx em(0.0), ep(0.0);
      for (int l = 0; l < nc; ++l) {
        em += p.lambda(l, j) * T[l];
        ep += p.rho(j, l) * T[l];
      }
      worst = std::max(worst, std::abs(em - std::exp(-a * H * u * x[j])));
      worst = std::max(worst, std::abs(ep - std::exp(a * H * u * x[j])));
    }
  }
  p.residual = worst / scale;
  return p;
}

}  // namespace

ChebPlan build_cheb_plan(double H, const RVec& x, const std::vector<double>& tau_c, double tol) {
  int nc = static_cast<int>(std::ceil(2.0 * H)) + 8;
  ChebPlan p;
  for (;;) {
    p = fit(H, x, nc);
    if (p.residual <= tol) break;
    if (nc >= 512) {
      throw NumericsError("chebyshev plan: residual " + std::to_string(p.residual) +
                          " above tolerance at nc = 512");
    }
    nc *= 2;
  }
  const int NC = static_cast<int>(tau_c.size());
  p.T.resize(NC, p.nc);
  std::vector<double> T(p.nc);
  for (int k = 0; k < NC; ++k) {
    cheb_values(tau_c[k] / H, p.nc, T.data());
    for (int l = 0; l < p.nc; ++l) p.T(k, l) = T[l];
  }
  return p;
}

}  // namespace tdse::xform
