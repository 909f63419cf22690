#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tdse/core.hpp"
#include "tdse/problems/field.hpp"

namespace tdse::contour {

// Node blocks in left-to-right contour order.
enum class Block : int { E1 = 0, A1 = 1, C = 2, A3 = 3, E3 = 4 };
inline constexpr std::array<Block, 5> kBlocks{Block::E1, Block::A1, Block::C, Block::A3,
                                              Block::E3};
const char* block_name(Block b);
inline int index(Block b) { return static_cast<int>(b); }

struct ContourConfig {
  double eps = 1e-10;
  int M = 100;
  int p = 8;
  int NE = 0;
  int q = 10;
  int nr = 1;
  int d = 1;
  double phimax = 0.0;
  double Vnorm = 0.0;

  void validate() const;
};

// Discretized contour: horizontal legs at Im = +H (left) and -H (right)
// joined by the diagonal Im = -Re through the origin, truncated at |Re| = K.
struct GammaQuadrature {
  ContourConfig cfg;
  double H = 0.0;
  double K = 0.0;
  double h = 0.0;
  int kappa = 0;
  std::array<std::vector<cplx>, 5> nodes;
  std::array<std::vector<cplx>, 5> weights;
  std::vector<double> panel_edges;  // 2 nr + 1 breakpoints on [-H, H]
  std::vector<double> tau_c;        // real parameter of each C node

  int M() const { return cfg.M; }
  int size(Block b) const { return static_cast<int>(nodes[index(b)].size()); }
  int offset(Block b) const;
  int total() const;
  const std::vector<cplx>& block_nodes(Block b) const { return nodes[index(b)]; }
  const std::vector<cplx>& block_weights(Block b) const { return weights[index(b)]; }
  std::vector<cplx> all_nodes() const;
  std::vector<cplx> all_weights() const;
};

// Half-height balancing truncation against cancellation error.
double select_H(double eps, double Vnorm, double phimax, int d);

GammaQuadrature build_quadrature(const ContourConfig& cfg);

// NE whose regular spacing (K - H)/(NE + 2 kappa - 1) is closest to h.
int ne_for_spacing(int M, int p, double h);

// max |phi(t)| over 10^4 + 1 uniform samples of [0, T].
double quiver_radius(const problems::FieldModel& field, double T);

// Grid size from the decay of |u0hat| on the real axis: the smallest even M
// whose cutoff pi M / 2 covers the band where |u0hat| > tol * peak, plus
// ceil(2H) extra grid units.
int suggest_M(const std::function<double(double)>& uhat0_abs, double H, double tol);

}  // namespace tdse::contour
