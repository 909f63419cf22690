#include "tdse/contour/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "tdse/contour/alpert.hpp"
#include "tdse/contour/gauss_legendre.hpp"

namespace tdse::contour {

const char* block_name(Block b) {
  switch (b) {
    case Block::E1: return "E1";
    case Block::A1: return "A1";
    case Block::C: return "C";
    case Block::A3: return "A3";
    case Block::E3: return "E3";
  }
  return "?";
}

void ContourConfig::validate() const {
  if (!(eps > DBL_EPSILON)) throw ConfigError("contour: eps must exceed machine epsilon");
  if (M < 2 || M % 2 != 0) throw ConfigError("contour: M must be even and >= 2");
  if (p != 2 && p != 4 && p != 8) throw ConfigError("contour: p must be 2, 4 or 8");
  if (2 * NE <= M) {
    throw ConfigError("contour: NE must exceed M/2 (NE=" + std::to_string(NE) +
                      ", M=" + std::to_string(M) + ")");
  }
  if (q < 1 || q > 64) throw ConfigError("contour: q must be in [1, 64]");
  if (nr < 0) throw ConfigError("contour: nr must be >= 0");
  if (d != 1 && d != 2) throw ConfigError("contour: d must be 1 or 2");
  if (phimax < 0.0) throw ConfigError("contour: phimax must be >= 0");
  if (Vnorm < 0.0) throw ConfigError("contour: Vnorm must be >= 0");
}

int GammaQuadrature::offset(Block b) const {
  int off = 0;
  for (int i = 0; i < index(b); ++i) off += static_cast<int>(nodes[i].size());
  return off;
}

int GammaQuadrature::total() const {
  int n = 0;
  for (const auto& v : nodes) n += static_cast<int>(v.size());
  return n;
}

std::vector<cplx> GammaQuadrature::all_nodes() const {
  std::vector<cplx> out;
  for (const auto& v : nodes) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<cplx> GammaQuadrature::all_weights() const {
  std::vector<cplx> out;
  for (const auto& v : weights) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double select_H(double eps, double Vnorm, double phimax, int d) {
  if (d != 1 && d != 2) throw ConfigError("select_H: d must be 1 or 2");
  if (phimax < 0.0 || Vnorm < 0.0) throw ConfigError("select_H: negative phimax or Vnorm");
  const double arg = eps / ((1.0 + Vnorm) * DBL_EPSILON);
  if (!(arg > 1.0)) {
    throw ConfigError("select_H: eps is unattainable in double precision for this |V|");
  }
  return std::log(arg) / (2.0 * d * (1.0 + phimax));
}

GammaQuadrature build_quadrature(const ContourConfig& cfg) {
  cfg.validate();
  GammaQuadrature g;
  g.cfg = cfg;
  g.H = select_H(cfg.eps, cfg.Vnorm, cfg.phimax, cfg.d);
  g.K = g.H + kPi * cfg.M / 2.0;
  const AlpertRule alp = alpert_rule(cfg.p);
  g.kappa = alp.kappa;
  g.h = (g.K - g.H) / (cfg.NE + 2 * alp.kappa - 1);
  const double H = g.H, h = g.h;

  auto& e3 = g.nodes[index(Block::E3)];
  auto& a3 = g.nodes[index(Block::A3)];
  for (int k = 0; k < cfg.NE; ++k) e3.emplace_back(H + (alp.kappa + k) * h, -H);
  for (int k = 0; k < cfg.p; ++k) a3.emplace_back(H + alp.nodes[k] * h, -H);
  g.weights[index(Block::E3)].assign(cfg.NE, cplx(h, 0.0));
  for (int k = 0; k < cfg.p; ++k) g.weights[index(Block::A3)].emplace_back(alp.weights[k] * h, 0.0);

  // Left leg by symmetry: negate and reverse.
  for (Block src : {Block::E3, Block::A3}) {
    const Block dst = src == Block::E3 ? Block::E1 : Block::A1;
    const auto& sn = g.nodes[index(src)];
    const auto& sw = g.weights[index(src)];
    g.nodes[index(dst)].assign(sn.rbegin(), sn.rend());
    for (auto& z : g.nodes[index(dst)]) z = -z;
    g.weights[index(dst)].assign(sw.rbegin(), sw.rend());
  }

  if (cfg.nr > 0) {
    std::vector<double> pos{0.0};
    for (int k = 1; k <= cfg.nr; ++k) pos.push_back(std::ldexp(H, k - cfg.nr));
    for (int k = cfg.nr; k >= 1; --k) g.panel_edges.push_back(-pos[k]);
    g.panel_edges.insert(g.panel_edges.end(), pos.begin(), pos.end());
    const GaussRule gl = gauss_legendre(cfg.q);
    const cplx diag(1.0, -1.0);
    for (std::size_t s = 0; s + 1 < g.panel_edges.size(); ++s) {
      const double a = g.panel_edges[s], b = g.panel_edges[s + 1];
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int j = 0; j < cfg.q; ++j) {
        const double tau = mid + half * gl.nodes[j];
        g.tau_c.push_back(tau);
        g.nodes[index(Block::C)].emplace_back(tau, -tau);
        g.weights[index(Block::C)].push_back(diag * (half * gl.weights[j]));
      }
    }
  }
  return g;
}

int ne_for_spacing(int M, int p, double h) {
  if (!(h > 0.0)) throw ConfigError("ne_for_spacing: h must be positive");
  const int kappa = alpert_rule(p).kappa;
  return static_cast<int>(std::lround(kPi * M / (2.0 * h))) - 2 * kappa + 1;
}

double quiver_radius(const problems::FieldModel& field, double T) {
  if (field.is_zero()) return 0.0;
  constexpr int n = 10000;
  double best = 0.0;
  for (int i = 0; i <= n; ++i) best = std::max(best, std::abs(field.phi(T * i / n)));
  return best;
}

int suggest_M(const std::function<double(double)>& uhat0_abs, double H, double tol) {
  double peak = 0.0;
  for (double xi = -2000.0; xi <= 2000.0; xi += 0.25) peak = std::max(peak, uhat0_abs(xi));
  if (peak == 0.0) return 2;
  double cutoff = 0.0;
  for (double xi = 0.0; xi <= 2000.0; xi += 0.25) {
    if (uhat0_abs(xi) > tol * peak || uhat0_abs(-xi) > tol * peak) cutoff = xi;
  }
  int M = static_cast<int>(std::ceil(2.0 * cutoff / kPi)) + static_cast<int>(std::ceil(2.0 * H));
  return M + (M % 2);
}

}  // namespace tdse::contour
