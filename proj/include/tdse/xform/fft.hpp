#pragma once

#include <atomic>
#include <memory>

#include "tdse/core.hpp"

namespace tdse::xform {

// Unnormalized complex FFT (sign -1 forward, +1 backward). Plans are built
// once and executed on caller buffers, so one plan serves many threads.
// Input and output must not alias.
class FftPlan {
 public:
  FftPlan() = default;
  FftPlan(int n, int sign);
  FftPlan(int n0, int n1, int sign);  // row-major n0 x n1

  void execute(const cplx* in, cplx* out) const;
  int size() const { return n_; }

 private:
  std::shared_ptr<void> plan_;
  int n_ = 0;
};

// Process-wide count of FFT executions (instrumentation for tests).
long fft_executions();

}  // namespace tdse::xform
