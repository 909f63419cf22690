#pragma once

#include <vector>

#include "tdse/core.hpp"
#include "tdse/xform/fft.hpp"

namespace tdse::xform {

// Shifted and scaled FFT:
//   forward  chat_k = sum_j exp(-i xi_k x_j) c_j,   k < n
//   inverse  c_j    = sum_k exp(+i xi_k x_j) chat_k, j < m
// with x_j = -1 + 2j/m and xi_k = alpha + k (beta - alpha)/n. Requires the
// resonance (beta - alpha)/(m n) = pi/nu, which turns the kernel into a
// length-nu DFT after twiddling. Only m inputs and n outputs of that DFT are
// used, so when nu has a prime factor above 7 the slice is computed as a
// chirp convolution of 5-smooth length L >= m + n - 1 instead.
class SSFFTPlan {
 public:
  SSFFTPlan() = default;
  SSFFTPlan(int m, int n, int nu, double alpha, double beta);
  // Frequency spacing delta = pi m / nu must give an integer nu.
  static SSFFTPlan with_spacing(int m, int n, double alpha, double delta);

  void forward(const cplx* c, cplx* out) const;
  void inverse(const cplx* chat, cplx* out) const;

  int m() const { return m_; }
  int n() const { return n_; }
  int nu() const { return nu_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double delta() const { return (beta_ - alpha_) / n_; }
  bool uses_chirp() const { return L_ > 0; }

 private:
  friend class SSFFT2DPlan;
  int m_ = 0, n_ = 0, nu_ = 0;
  double alpha_ = 0.0, beta_ = 0.0;
  std::vector<cplx> pre_fwd_, post_fwd_, pre_inv_, post_inv_;
  FftPlan fwd_, inv_;
  // chirp path: L = 0 when the plain length-nu FFT is used
  int L_ = 0;
  std::vector<cplx> chirp_;         // exp(-i pi s^2 / nu), s < max(m, n)
  std::vector<cplx> kern_fwd_hat_;  // FFT of the forward convolution kernel
  std::vector<cplx> kern_inv_hat_;
  FftPlan cfwd_, cinv_;

  // out_k = sum_{j < nin} in_j exp(sign 2 pi i j k / nu), k < nout
  void chirp_dft(const cplx* in, int nin, cplx* out, int nout, int sign) const;
};

// Tensor product of two 1D plans, one nu0 x nu1 FFT per application.
// Grids and outputs are row-major.
class SSFFT2DPlan {
 public:
  SSFFT2DPlan() = default;
  SSFFT2DPlan(const SSFFTPlan& p0, const SSFFTPlan& p1);

  // c: m0 x m1 (optionally pre-scaled by s0[j0] s1[j1]); out: n0 x n1
  void forward(const cplx* c, const double* s0, const double* s1, cplx* out) const;
  // chat: n0 x n1; out (accumulated): += s0[j0] s1[j1] * result
  void inverse_add(const cplx* chat, const double* s0, const double* s1, cplx* out) const;

 private:
  SSFFTPlan p0_, p1_;
  FftPlan fwd_, inv_;
};

}  // namespace tdse::xform
