#include "tdse/xform/fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace tdse::xform {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

std::atomic<long> g_executions{0};

std::shared_ptr<void> wrap(fftw_plan p) {
  if (!p) throw NumericsError("FFTW failed to create a plan");
  return std::shared_ptr<void>(p, [](void* q) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(q));
  });
}

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

}  // namespace

FftPlan::FftPlan(int n, int sign) : n_(n) {
  std::lock_guard lock(planner_mutex());
  auto* a = fftw_alloc_complex(n);
  auto* b = fftw_alloc_complex(n);
  auto* p = fftw_plan_dft_1d(n, a, b, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, kFlags);
  fftw_free(a);
  fftw_free(b);
  plan_ = wrap(p);
}

FftPlan::FftPlan(int n0, int n1, int sign) : n_(n0 * n1) {
  std::lock_guard lock(planner_mutex());
  auto* a = fftw_alloc_complex(n_);
  auto* b = fftw_alloc_complex(n_);
  auto* p = fftw_plan_dft_2d(n0, n1, a, b, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, kFlags);
  fftw_free(a);
  fftw_free(b);
  plan_ = wrap(p);
}

void FftPlan::execute(const cplx* in, cplx* out) const {
  g_executions.fetch_add(1, std::memory_order_relaxed);
  fftw_execute_dft(static_cast<fftw_plan>(plan_.get()),
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

long fft_executions() { return g_executions.load(); }

}  // namespace tdse::xform
