#include "tdse/problems/ground_state.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "tdse/contour/gauss_legendre.hpp"

namespace tdse::problems {

GroundState ground_state_1d(const std::function<double(double)>& V, int M) {
  if (M < 8 || M % 2 != 0) throw ConfigError("ground_state_1d: M_eig must be even and >= 8");
  const double hh = 2.0 * kPi / M;
  Eigen::MatrixXd Hm(M, M);
  for (int j = 0; j < M; ++j) {
    for (int k = 0; k < M; ++k) {
      double d2;
      if (j == k) {
        d2 = -kPi * kPi / (3.0 * hh * hh) - 1.0 / 6.0;
      } else {
        const double s = std::sin((j - k) * hh / 2.0);
        d2 = -(((j - k) % 2 == 0) ? 1.0 : -1.0) / (2.0 * s * s);
      }
      Hm(j, k) = -d2;
    }
    Hm(j, j) += V(-kPi + j * hh);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hm);
  if (es.info() != Eigen::Success) throw NumericsError("ground_state_1d: eigensolver failed");
  GroundState g;
  g.eigenvalue = es.eigenvalues()[0];
  Eigen::VectorXd v = es.eigenvectors().col(0);
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0) v = -v;
  v /= std::sqrt(hh * v.squaredNorm());
  g.residual = std::sqrt(hh) * (Hm * v - g.eigenvalue * v).norm();
  g.nodes.resize(M);
  for (int j = 0; j < M; ++j) g.nodes[j] = -kPi + j * hh;
  g.values = v;

  // Trigonometric interpolant, Nyquist mode split symmetrically.
  const int half = M / 2;
  Eigen::VectorXcd c(M);
  for (int k = -half; k < half; ++k) {
    cplx s(0.0);
    for (int j = 0; j < M; ++j) s += v[j] * std::exp(-kI * double(k) * g.nodes[j]);
    c[k + half] = s / double(M);
  }
  g.eval_ = [c, half](double x) {
    double s = (c[0] * std::cos(half * x)).real();
    for (int k = -half + 1; k < half; ++k) s += (c[k + half] * std::exp(kI * double(k) * x)).real();
    return s;
  };
  return g;
}

GroundState ground_state_radial(const std::function<double(double)>& V, double R, int N) {
  if (N < 5 || N % 2 == 0) throw ConfigError("ground_state_radial: N must be odd and >= 5");
  Eigen::VectorXd x(N + 1);
  for (int j = 0; j <= N; ++j) x[j] = std::cos(kPi * j / N);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 1, N + 1);
  auto cw = [N](int j) { return (j == 0 || j == N) ? 2.0 : 1.0; };
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      D(i, j) = cw(i) / cw(j) * (((i + j) % 2 == 0) ? 1.0 : -1.0) / (x[i] - x[j]);
    }
    D(i, i) = -D.row(i).sum();
  }
  D /= R;
  const Eigen::MatrixXd D2 = D * D;
  const int n2 = (N - 1) / 2;
  Eigen::MatrixXd Hm(n2, n2);
  for (int i = 1; i <= n2; ++i) {
    const double r = R * x[i];
    for (int j = 1; j <= n2; ++j) {
      Hm(i - 1, j - 1) = -(D2(i, j) + D2(i, N - j) + (D(i, j) + D(i, N - j)) / r);
    }
    Hm(i - 1, i - 1) += V(r);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(Hm);
  if (es.info() != Eigen::Success) throw NumericsError("ground_state_radial: eigensolver failed");
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < n2; ++k) {
    if (es.eigenvalues()[k].real() < es.eigenvalues()[best].real()) best = k;
  }
  GroundState g;
  g.eigenvalue = es.eigenvalues()[best].real();
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0) v = -v;

  Eigen::VectorXd full = Eigen::VectorXd::Zero(N + 1);
  for (int i = 1; i <= n2; ++i) {
    full[i] = v[i - 1];
    full[N - i] = v[i - 1];
  }
  Eigen::VectorXd bw(N + 1);
  for (int j = 0; j <= N; ++j) bw[j] = ((j % 2 == 0) ? 1.0 : -1.0) * (j == 0 || j == N ? 0.5 : 1.0);
  auto bary = [x, full, bw, R](double r) {
    const double s = std::abs(r) / R;
    if (s >= 1.0) return 0.0;
    double num = 0.0, den = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double d = s - x[j];
      if (d == 0.0) return full[j];
      num += bw[j] / d * full[j];
      den += bw[j] / d;
    }
    return num / den;
  };
  // 2 pi int_0^R u^2 r dr by composite Gauss-Legendre.
  const auto gl = contour::gauss_legendre(32);
  constexpr int panels = 48;
  double mass = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = R * p / panels, b = R * (p + 1) / panels;
    for (int k = 0; k < 32; ++k) {
      const double r = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[k];
      const double u = bary(r);
      mass += 0.5 * (b - a) * gl.weights[k] * u * u * r;
    }
  }
  const double scale = 1.0 / std::sqrt(2.0 * kPi * mass);
  v *= scale;
  g.residual = (Hm * v - g.eigenvalue * v).norm() / std::sqrt(double(n2));
  g.nodes = R * x.segment(1, n2);
  g.values = v;
  g.eval_ = [bary, scale](double r) { return scale * bary(r); };
  return g;
}

std::shared_ptr<const GroundState> ground_state(const PotentialSpec& spec, int d) {
  using Key = std::tuple<int, int, double, double, double>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const GroundState>> cache;
  const Key key{d, static_cast<int>(spec.kind), spec.V0, spec.beta, spec.c};
  std::lock_guard lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const Potential V = spec.to_potential();
  std::shared_ptr<const GroundState> g;
  if (d == 1) {
    g = std::make_shared<GroundState>(ground_state_1d([&](double x) { return V(x, 0.0, 0.0); }));
  } else {
    g = std::make_shared<GroundState>(
        ground_state_radial([&](double r) { return V(r, 0.0, 0.0); }));
  }
  cache.emplace(key, g);
  return g;
}

}  // namespace tdse::problems
