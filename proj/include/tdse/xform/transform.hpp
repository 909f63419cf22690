#pragma once

#include <atomic>
#include <memory>

#include "tdse/xform/axis.hpp"

namespace tdse::xform {

// Call counters shared by copies of a transform.
struct TransformCounters {
  std::atomic<long> forward{0};
  std::atomic<long> inverse{0};
};

// Weightless sums between the M-point grid on [-1, 1] and the contour:
//   forward  fhat_k = sum_j exp(-i zeta_k x_j) f_j
//   inverse  f_j    = sum_k exp(+i zeta_k x_j) fhat_k
class Transform1D {
 public:
  explicit Transform1D(std::shared_ptr<const contour::GammaQuadrature> quad,
                       TransformOptions opts = {});

  CVec forward(const CVec& f) const;
  CVec inverse(const CVec& fhat) const;
  SpectralCoeffs1D forward_coeffs(const CVec& f) const;
  CVec inverse(const SpectralCoeffs1D& c) const { return inverse(c.values); }

  const AxisTransform& axis() const { return *axis_; }
  const BlockLayout& layout() const { return axis_->layout(); }
  int M() const { return axis_->M(); }
  int N() const { return axis_->layout().total; }
  long forward_calls() const { return counters_->forward; }
  long inverse_calls() const { return counters_->inverse; }

 private:
  std::shared_ptr<const AxisTransform> axis_;
  std::shared_ptr<TransformCounters> counters_;
};

// Tensor-product transform on an M0 x M1 row-major grid. Each of the 25
// block pairs is factored into per-axis stages; the four E-E pairs use a
// two-dimensional shifted and scaled FFT.
class Transform2D {
 public:
  Transform2D(std::shared_ptr<const contour::GammaQuadrature> q0,
              std::shared_ptr<const contour::GammaQuadrature> q1, TransformOptions opts = {});

  CMat forward(const CMat& f) const;
  CMat inverse(const CMat& fhat) const;
  SpectralCoeffs2D forward_coeffs(const CMat& f) const;
  CMat inverse(const SpectralCoeffs2D& c) const { return inverse(c.values); }

  const AxisTransform& axis(int a) const { return a == 0 ? *ax0_ : *ax1_; }
  long forward_calls() const { return counters_->forward; }
  long inverse_calls() const { return counters_->inverse; }

 private:
  struct Tagged {
    const Stage* stage;
    int axis;
  };
  std::vector<Tagged> merged(Block b0, Block b1, bool inverse) const;
  const SSFFT2DPlan& ee_plan(Block b0, Block b1) const;

  std::shared_ptr<const AxisTransform> ax0_, ax1_;
  std::array<SSFFT2DPlan, 4> ee_;  // (E1,E1), (E1,E3), (E3,E1), (E3,E3)
  std::shared_ptr<TransformCounters> counters_;
};

}  // namespace tdse::xform
