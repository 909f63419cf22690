#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>

#include "tdse/contour/alpert.hpp"
#include "tdse/contour/gauss_legendre.hpp"
#include "tdse/freespace/solver.hpp"

namespace tdse::freespace {

namespace {

using contour::Block;
using contour::GammaQuadrature;
using contour::index;
using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Triplets = std::vector<Eigen::Triplet<cplx>>;

// Same contour with spacing h/r on the legs and every diagonal panel split
// into r pieces.
GammaQuadrature refine(const GammaQuadrature& q, int r) {
  GammaQuadrature g = q;
  const auto alp = contour::alpert_rule(q.cfg.p);
  const int NE = r * (q.cfg.NE + 2 * q.kappa - 1) - 2 * q.kappa + 1;
  g.cfg.NE = NE;
  g.h = q.h / r;
  const double H = q.H, h = g.h;
  for (auto& v : g.nodes) v.clear();
  for (auto& v : g.weights) v.clear();
  for (int k = 0; k < NE; ++k) {
    g.nodes[index(Block::E3)].emplace_back(H + (q.kappa + k) * h, -H);
    g.weights[index(Block::E3)].emplace_back(h, 0.0);
  }
  for (int k = 0; k < q.cfg.p; ++k) {
    g.nodes[index(Block::A3)].emplace_back(H + alp.nodes[k] * h, -H);
    g.weights[index(Block::A3)].emplace_back(alp.weights[k] * h, 0.0);
  }
  for (Block src : {Block::E3, Block::A3}) {
    const Block dst = src == Block::E3 ? Block::E1 : Block::A1;
    const auto& sn = g.nodes[index(src)];
    const auto& sw = g.weights[index(src)];
    g.nodes[index(dst)].assign(sn.rbegin(), sn.rend());
    for (auto& z : g.nodes[index(dst)]) z = -z;
    g.weights[index(dst)].assign(sw.rbegin(), sw.rend());
  }
  g.tau_c.clear();
  if (!q.panel_edges.empty()) {
    const auto gl = contour::gauss_legendre(q.cfg.q);
    for (std::size_t s = 0; s + 1 < q.panel_edges.size(); ++s) {
      for (int piece = 0; piece < r; ++piece) {
        const double a0 = q.panel_edges[s], a1 = q.panel_edges[s + 1];
        const double a = a0 + (a1 - a0) * piece / r, b = a0 + (a1 - a0) * (piece + 1) / r;
        for (int j = 0; j < q.cfg.q; ++j) {
          const double tau = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[j];
          g.tau_c.push_back(tau);
          g.nodes[index(Block::C)].emplace_back(tau, -tau);
          g.weights[index(Block::C)].push_back(cplx(1.0, -1.0) * (0.5 * (b - a) * gl.weights[j]));
        }
      }
    }
  }
  return g;
}

// Barycentric Lagrange weights for evaluating at t from nodes s[0..n).
void lagrange_row(const double* s, int n, double t, std::vector<double>& w) {
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (t == s[i]) {
      w[i] = 1.0;
      return;
    }
  }
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    double b = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) b /= (s[i] - s[j]);
    }
    w[i] = b / (t - s[i]);
    den += w[i];
  }
  for (auto& v : w) v /= den;
}

// Local degree-15 interpolation along a horizontal leg; targets past the
// last source node (where the truncated integrand is negligible) get zero.
void leg_rows(const std::vector<double>& src, int src_off, const std::vector<double>& tgt,
              int tgt_off, Triplets& out) {
  const int n = static_cast<int>(src.size());
  const int L = std::min(16, n);
  const double reach = std::max(std::abs(src.front()), std::abs(src.back())) * (1.0 + 1e-14);
  std::vector<double> w;
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    const double x = tgt[t];
    if (std::abs(x) > reach) continue;
    const auto it = std::lower_bound(src.begin(), src.end(), x);
    int c = static_cast<int>(it - src.begin());
    int lo = std::clamp(c - L / 2, 0, n - L);
    lagrange_row(src.data() + lo, L, x, w);
    for (int i = 0; i < L; ++i) {
      if (w[i] != 0.0) out.emplace_back(tgt_off + int(t), src_off + lo + i, w[i]);
    }
  }
}

SpMat interpolation(const GammaQuadrature& q, const GammaQuadrature& g) {
  Triplets trip;
  for (const auto& leg : {std::array<Block, 2>{Block::E1, Block::A1},
                          std::array<Block, 2>{Block::A3, Block::E3}}) {
    std::vector<double> src, tgt;
    for (Block b : leg) {
      for (cplx z : q.block_nodes(b)) src.push_back(z.real());
      for (cplx z : g.block_nodes(b)) tgt.push_back(z.real());
    }
    leg_rows(src, q.offset(leg[0]), tgt, g.offset(leg[0]), trip);
  }
  if (!q.panel_edges.empty()) {
    const int qn = q.cfg.q;
    const int r = static_cast<int>(g.tau_c.size() / q.tau_c.size());
    std::vector<double> w;
    for (std::size_t s = 0; s + 1 < q.panel_edges.size(); ++s) {
      const double* src = q.tau_c.data() + s * qn;
      for (int t = 0; t < r * qn; ++t) {
        const int ti = static_cast<int>(s) * r * qn + t;
        lagrange_row(src, qn, g.tau_c[ti], w);
        for (int i = 0; i < qn; ++i) {
          trip.emplace_back(g.offset(Block::C) + ti, q.offset(Block::C) + int(s) * qn + i, w[i]);
        }
      }
    }
  }
  SpMat P(g.total(), q.total());
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

CVec to_vec(const std::vector<cplx>& v) {
  return Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

CVec FreeSolver::evaluate_exterior(const std::vector<std::array<double, 2>>& points,
                                   double R_ext) const {
  if (!(R_ext > 0.0)) throw ConfigError("evaluate_exterior: R_ext must be positive");
  for (const auto& p : points) {
    for (int a = 0; a < d_; ++a) {
      if (std::abs(p[a]) > R_ext) {
        throw ConfigError("evaluate_exterior: point outside radius " + std::to_string(R_ext));
      }
    }
  }
  const int r = std::max(1, static_cast<int>(std::ceil(R_ext - 1e-12)));
  std::array<CVec, 2> z, w;
  CMat uh = s_.uhat;
  for (int a = 0; a < d_; ++a) {
    const GammaQuadrature g = refine(*q_[a], r);
    const SpMat P = interpolation(*q_[a], g);
    if (a == 0) uh = P * uh;
    else uh = (P * uh.transpose()).transpose();
    z[a] = to_vec(g.all_nodes());
    w[a] = to_vec(g.all_weights());
  }
  CVec out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const CVec e0 = (kI * z[0] * points[i][0]).array().exp() * w[0].array();
    if (d_ == 1) {
      out[i] = inv_scale_ * (e0.transpose() * uh.col(0))(0);
    } else {
      const CVec e1 = (kI * z[1] * points[i][1]).array().exp() * w[1].array();
      out[i] = inv_scale_ * (e0.transpose() * uh * e1)(0);
    }
  }
  return out;
}

}  // namespace tdse::freespace
