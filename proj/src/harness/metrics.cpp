#include "tdse/harness/metrics.hpp"

#include <cmath>
#include <limits>

namespace tdse::harness {

namespace {

double l2_flat(const cplx* u, const cplx* ref, Eigen::Index n, int d, double L) {
  if (d != 1 && d != 2) throw ConfigError("l2_error: d must be 1 or 2");
  const double M = d == 1 ? double(n) : std::sqrt(double(n));
  if (d == 2 && std::round(M) * std::round(M) != double(n))
    throw ConfigError("l2_error: 2D grid is not square");
  const double cell = std::pow(2.0 * L / std::round(M), d);
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += std::norm(u[i] - ref[i]);
  return std::sqrt(s * cell);
}

}  // namespace

double l2_error(const CVec& u, const CVec& ref, int d, double L) {
  if (u.size() != ref.size()) throw ConfigError("l2_error: grid mismatch");
  return l2_flat(u.data(), ref.data(), u.size(), d, L);
}

double l2_error(const CMat& u, const CMat& ref, int d, double L) {
  if (u.rows() != ref.rows() || u.cols() != ref.cols())
    throw ConfigError("l2_error: grid mismatch");
  if (d == 2 && u.rows() != u.cols()) {
    // rectangular grids: per-axis cell widths
    double s = (u - ref).cwiseAbs2().sum();
    return std::sqrt(s * (2.0 * L / u.rows()) * (2.0 * L / u.cols()));
  }
  return l2_flat(u.data(), ref.data(), u.size(), d, L);
}

void ErrorReport::add(double t, double E) {
  rows.emplace_back(t, E);
  if (E > Emax) Emax = E;
}

std::vector<double> observed_orders(const std::vector<double>& param,
                                    const std::vector<double>& err) {
  std::vector<double> out(err.size(), std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 1; i < err.size() && i < param.size(); ++i) {
    if (err[i] > 0 && err[i - 1] > 0 && param[i] != param[i - 1])
      out[i] = std::log(err[i - 1] / err[i]) / std::log(param[i - 1] / param[i]);
  }
  return out;
}

}  // namespace tdse::harness
