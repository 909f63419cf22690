#include <benchmark/benchmark.h>
#include <omp.h>

#include <memory>
#include <random>

#include "tdse/contour/quadrature.hpp"
#include "tdse/xform/dense.hpp"
#include "tdse/xform/transform.hpp"

using namespace tdse;

namespace {

std::shared_ptr<const contour::GammaQuadrature> quad(int M, double h) {
  contour::ContourConfig c;
  c.eps = 1e-10;
  c.M = M;
  c.p = 8;
  c.q = 10;
  c.nr = 1;
  c.d = 2;
  c.phimax = 1.0;
  c.Vnorm = 248.0;
  c.NE = contour::ne_for_spacing(M, 8, h);
  return std::make_shared<contour::GammaQuadrature>(contour::build_quadrature(c));
}

CMat random_mat(int r, int c) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  CMat m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = {n(rng), n(rng)};
  return m;
}

// state.range(0): M, range(1): threads (0 = all)
void threads_from(benchmark::State& s) {
  const int n = int(s.range(1));
  omp_set_num_threads(n > 0 ? n : omp_get_num_procs());
}

void BM_Forward1D_Fast(benchmark::State& s) {
  auto q = quad(int(s.range(0)), 0.5);
  xform::Transform1D t(q);
  CVec f = random_mat(q->M(), 1);
  for (auto _ : s) benchmark::DoNotOptimize(t.forward(f));
}

void BM_Forward1D_Dense(benchmark::State& s) {
  auto q = quad(int(s.range(0)), 0.5);
  CVec f = random_mat(q->M(), 1);
  for (auto _ : s) benchmark::DoNotOptimize(xform::dense_forward_1d(*q, f));
}

void BM_Step2D_Fast(benchmark::State& s) {
  threads_from(s);
  auto q = quad(int(s.range(0)), 1.4);
  xform::Transform2D t(q, q);
  CMat f = random_mat(q->M(), q->M());
  for (auto _ : s) {
    CMat g = t.forward(f);
    benchmark::DoNotOptimize(t.inverse(g));
  }
}

void BM_Step2D_Dense(benchmark::State& s) {
  auto q = quad(int(s.range(0)), 1.4);
  CMat f = random_mat(q->M(), q->M());
  for (auto _ : s) {
    CMat g = xform::dense_forward_2d(*q, *q, f);
    benchmark::DoNotOptimize(xform::dense_inverse_2d(*q, *q, g));
  }
}

}  // namespace

BENCHMARK(BM_Forward1D_Fast)->Arg(100)->Arg(400);
BENCHMARK(BM_Forward1D_Dense)->Arg(100)->Arg(400);
BENCHMARK(BM_Step2D_Fast)->Args({64, 1})->Args({64, 0})->Args({100, 1})->Args({100, 0})->UseRealTime();
BENCHMARK(BM_Step2D_Dense)->Args({32, 1})->Args({64, 1});

BENCHMARK_MAIN();
