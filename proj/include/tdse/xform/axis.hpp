#pragma once

#include <memory>
#include <vector>

#include "tdse/contour/quadrature.hpp"
#include "tdse/xform/chebyshev.hpp"
#include "tdse/xform/coeffs.hpp"
#include "tdse/xform/ssfft.hpp"

namespace tdse::xform {

enum class CMethod { Auto, Direct, Chebyshev };

struct TransformOptions {
  CMethod c_method = CMethod::Auto;
  double cheb_tol = 0.0;  // relative Chebyshev residual; 0 means the contour eps
};

// One factor of a block transform along a single axis. Multi-axis block
// transforms are built by merging the per-axis stage lists by priority.
struct Stage {
  enum class Kind { Dense, Ssfft };
  Kind kind = Kind::Dense;
  Block block = Block::E1;
  bool inverse = false;
  int priority = 0;
  int id = 0;   // unique within one AxisTransform
  int mat = -1; // Dense: index into the matrix table
  int in_len = 0;
  int out_len = 0;
};

// All block transforms between the M-point grid and one contour.
class AxisTransform {
 public:
  AxisTransform(std::shared_ptr<const contour::GammaQuadrature> quad, TransformOptions opts = {});

  const contour::GammaQuadrature& quad() const { return *quad_; }
  std::shared_ptr<const contour::GammaQuadrature> quad_ptr() const { return quad_; }
  const BlockLayout& layout() const { return layout_; }
  int M() const { return quad_->M(); }
  const RVec& grid() const { return x_; }

  const std::vector<Stage>& forward_stages(Block b) const { return fwd_[contour::index(b)]; }
  const std::vector<Stage>& inverse_stages(Block b) const { return inv_[contour::index(b)]; }

  // Apply a stage along `axis` (0: down columns, 1: along rows).
  CMat apply(const Stage& s, const CMat& in, int axis) const;

  const SSFFTPlan& e_plan(Block b) const { return b == Block::E1 ? e1_ : e3_; }
  // Forward pre-scale (exp(+-H x)) for an E block; the inverse post-scale
  // is its reciprocal.
  const RVec& e_scale(Block b, bool inverse) const;

  bool uses_chebyshev() const { return cheb_used_; }
  const ChebPlan& cheb() const { return cheb_; }

 private:
  void add_dense(std::vector<Stage>& list, Block b, bool inverse, int priority, CMat m);

  std::shared_ptr<const contour::GammaQuadrature> quad_;
  BlockLayout layout_;
  RVec x_;
  RVec scale_pos_, scale_neg_;  // exp(+H x), exp(-H x)
  SSFFTPlan e1_, e3_;
  std::vector<CMat> mats_;
  std::array<std::vector<Stage>, 5> fwd_, inv_;
  ChebPlan cheb_;
  bool cheb_used_ = false;
  int next_id_ = 0;
};

}  // namespace tdse::xform
