#include "tdse/xform/dense.hpp"

#include "tdse/xform/coeffs.hpp"

namespace tdse::xform {

namespace {

// table(k, j) = exp(sign i zeta_k x_j)
CMat exp_table(const contour::GammaQuadrature& q, double sign) {
  const auto z = q.all_nodes();
  const RVec x = physical_grid(q.M());
  CMat t(z.size(), x.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (int j = 0; j < x.size(); ++j) t(k, j) = std::exp(sign * kI * z[k] * x[j]);
  }
  return t;
}

}  // namespace

CVec dense_forward_1d(const contour::GammaQuadrature& q, const CVec& f) {
  if (f.size() != q.M()) throw ConfigError("dense_forward_1d: size mismatch");
  const auto z = q.all_nodes();
  const RVec x = physical_grid(q.M());
  CVec out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    cplx s(0.0);
    for (int j = 0; j < x.size(); ++j) s += std::exp(-kI * z[k] * x[j]) * f[j];
    out[k] = s;
  }
  return out;
}

CVec dense_inverse_1d(const contour::GammaQuadrature& q, const CVec& fhat) {
  const auto z = q.all_nodes();
  if (fhat.size() != static_cast<Eigen::Index>(z.size())) {
    throw ConfigError("dense_inverse_1d: size mismatch");
  }
  const RVec x = physical_grid(q.M());
  CVec out(x.size());
  for (int j = 0; j < x.size(); ++j) {
    cplx s(0.0);
    for (std::size_t k = 0; k < z.size(); ++k) s += std::exp(kI * z[k] * x[j]) * fhat[k];
    out[j] = s;
  }
  return out;
}

CMat dense_forward_2d(const contour::GammaQuadrature& q0, const contour::GammaQuadrature& q1,
                      const CMat& f) {
  if (f.rows() != q0.M() || f.cols() != q1.M()) throw ConfigError("dense_forward_2d: shape mismatch");
  const CMat e0 = exp_table(q0, -1.0), e1 = exp_table(q1, -1.0);
  CMat out(e0.rows(), e1.rows());
  for (Eigen::Index k0 = 0; k0 < e0.rows(); ++k0) {
    for (Eigen::Index k1 = 0; k1 < e1.rows(); ++k1) {
      cplx s(0.0);
      for (Eigen::Index j0 = 0; j0 < f.rows(); ++j0) {
        for (Eigen::Index j1 = 0; j1 < f.cols(); ++j1) s += e0(k0, j0) * e1(k1, j1) * f(j0, j1);
      }
      out(k0, k1) = s;
    }
  }
  return out;
}

CMat dense_inverse_2d(const contour::GammaQuadrature& q0, const contour::GammaQuadrature& q1,
                      const CMat& fhat) {
  const CMat e0 = exp_table(q0, 1.0), e1 = exp_table(q1, 1.0);
  if (fhat.rows() != e0.rows() || fhat.cols() != e1.rows()) {
    throw ConfigError("dense_inverse_2d: shape mismatch");
  }
  // accumulate one node pair at a time so zero coefficients cost nothing
  CMat out = CMat::Zero(e0.cols(), e1.cols());
  for (Eigen::Index k0 = 0; k0 < e0.rows(); ++k0) {
    for (Eigen::Index k1 = 0; k1 < e1.rows(); ++k1) {
      const cplx c = fhat(k0, k1);
      if (c == cplx(0.0)) continue;
      for (Eigen::Index j0 = 0; j0 < e0.cols(); ++j0) {
        const cplx a = c * e0(k0, j0);
        for (Eigen::Index j1 = 0; j1 < e1.cols(); ++j1) out(j0, j1) += a * e1(k1, j1);
      }
    }
  }
  return out;
}

}  // namespace tdse::xform
