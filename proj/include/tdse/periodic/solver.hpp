#pragma once

#include <deque>
#include <map>
#include <vector>

#include "tdse/core.hpp"
#include "tdse/periodic/adams.hpp"
#include "tdse/problems/field.hpp"
#include "tdse/problems/potential.hpp"
#include "tdse/xform/fft.hpp"

namespace tdse::periodic {

// Grid values are flat, row-major over the M^d points x_j = -pi + 2 pi j / M.
// uhat holds the standard DFT of u divided by M^d, in FFT index order
// (index i carries wavenumber i for i < M/2, i - M otherwise).
struct PeriodicState {
  double t = 0.0;
  CVec u;
  CVec uhat;
  std::deque<CVec> history;  // history[j] = DFT(V u)/M^d at t - j dt
};

class PeriodicSolver {
 public:
  PeriodicSolver(int d, int M, problems::Potential V, problems::FieldModel A, int order,
                 double dt);

  void initialize(const CVec& u0, double t0 = 0.0);
  // Richardson startup while history is short, Adams afterwards.
  void step();
  void advance(int steps);

  void step_trapezoidal(double dt);
  void step_adams();
  // Runs the n - 2 extrapolated startup steps.
  void richardson_startup();
  // One step of dt by n/2 levels of extrapolated trapezoidal substeps; also
  // usable on its own as an order-n one-step method.
  void richardson_step();

  const PeriodicState& state() const { return s_; }
  const RVec& axis_grid() const { return x_; }
  int M() const { return M_; }
  int d() const { return d_; }
  double dt() const { return dt_; }
  const AdamsScheme& scheme() const { return scheme_; }
  double norm() const;
  long fft_count() const { return ffts_; }

 private:
  CVec dft(const CVec& v);
  CVec idft(const CVec& v);
  const RVec& potential_at(double t);
  CVec phase(double t1, double span) const;
  void generic_step(PeriodicState& s, double dt, double t1, const std::vector<double>& mu);
  const CVec& cached_phase(int j);

  int d_, M_, n_;
  problems::Potential V_;
  problems::FieldModel A_;
  AdamsScheme scheme_;
  double dt_;
  RVec x_;
  RVec k2_, ka_;  // |k|^2 and the field-axis component per flat index
  xform::FftPlan fwd_, inv_;
  PeriodicState s_;
  RVec V_static_;
  bool V_cached_ = false;
  RVec V_scratch_;
  std::map<int, CVec> phase_cache_;
  long ffts_ = 0;
  double t0_ = 0.0;
  long steps_ = 0;
};

}  // namespace tdse::periodic
