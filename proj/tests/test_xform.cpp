#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "tdse/contour/quadrature.hpp"
#include "tdse/xform/dense.hpp"
#include "tdse/xform/ssfft.hpp"
#include "tdse/xform/transform.hpp"

using namespace tdse;
using namespace tdse::xform;
using contour::Block;

namespace {

std::shared_ptr<const contour::GammaQuadrature> make_quad(int M, int NE, int q, int nr,
                                                          double phimax = 1.0, int d = 1,
                                                          double eps = 1e-10) {
  contour::ContourConfig c;
  c.eps = eps;
  c.M = M;
  c.p = 8;
  c.NE = NE;
  c.q = q;
  c.nr = nr;
  c.d = d;
  c.phimax = phimax;
  c.Vnorm = 589.0;
  return std::make_shared<contour::GammaQuadrature>(contour::build_quadrature(c));
}

struct Rng {
  std::mt19937_64 g;
  std::normal_distribution<double> n;
  explicit Rng(unsigned s) : g(s) {}
  cplx operator()() { return {n(g), n(g)}; }
  CVec vec(int k) {
    CVec v(k);
    for (auto& x : v) x = (*this)();
    return v;
  }
  CMat mat(int r, int c) {
    CMat m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = (*this)();
    return m;
  }
};

double l1(const CVec& v) { return v.cwiseAbs().sum(); }

}  // namespace

TEST_CASE("shifted and scaled FFT") {
  // 458 = 2 * 229 and 1346 = 2 * 673 take the chirp path
  for (int nu : {128, 458, 1346}) {
    CAPTURE(nu);
    const int m = 64, n = 96;
    const double alpha = 0.3, beta = alpha + kPi * m * n / nu;
    SSFFTPlan P(m, n, nu, alpha, beta);
    CHECK(P.uses_chirp() == (nu != 128));
    RVec x(m);
    for (int j = 0; j < m; ++j) x[j] = -1.0 + 2.0 * j / m;
    auto xi = [&](int k) { return alpha + (beta - alpha) * k / n; };

    CVec c = CVec::Zero(m), out(n);
    P.forward(c.data(), out.data());
    CHECK(out.norm() == 0.0);

    c[0] = 1.0;
    P.forward(c.data(), out.data());
    for (int k = 0; k < n; ++k) CHECK(std::abs(out[k] - std::exp(kI * xi(k))) < 1e-13);

    CVec ch = CVec::Zero(n), back(m);
    ch[0] = 1.0;
    P.inverse(ch.data(), back.data());
    for (int j = 0; j < m; ++j) CHECK(std::abs(back[j] - std::exp(kI * alpha * x[j])) < 1e-13);

    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
      c = rng.vec(m);
      P.forward(c.data(), out.data());
      double err = 0;
      for (int k = 0; k < n; ++k) {
        cplx s = 0;
        for (int j = 0; j < m; ++j) s += std::exp(-kI * xi(k) * x[j]) * c[j];
        err = std::max(err, std::abs(out[k] - s));
      }
      CHECK(err < 1e-12 * l1(c));

      ch = rng.vec(n);
      P.inverse(ch.data(), back.data());
      err = 0;
      for (int j = 0; j < m; ++j) {
        cplx s = 0;
        for (int k = 0; k < n; ++k) s += std::exp(kI * xi(k) * x[j]) * ch[k];
        err = std::max(err, std::abs(back[j] - s));
      }
      CHECK(err < 1e-12 * l1(ch));
    }
    CHECK_THROWS_AS(SSFFTPlan(m, n, nu, alpha, beta + 1e-3), ConfigError);
  }
  CHECK_THROWS_AS(SSFFTPlan(64, 96, 64, 0.3, 0.3 + kPi * 64 * 96 / 64), ConfigError);
}

TEST_CASE("forward 1D special inputs") {
  auto q = make_quad(64, 48, 10, 2);
  Transform1D T(q);
  CHECK(T.forward(CVec::Zero(64)).norm() == 0.0);
  CHECK(T.inverse(CVec::Zero(T.N())).norm() == 0.0);

  // all-ones input: geometric series
  CVec f = CVec::Ones(64);
  CVec fh = T.forward(f);
  auto z = q->all_nodes();
  double err = 0;
  for (size_t k = 0; k < z.size(); ++k) {
    cplx r = std::exp(-2.0 * kI * z[k] / 64.0);
    cplx s = std::exp(kI * z[k]) * (1.0 - std::pow(r, 64)) / (1.0 - r);
    err = std::max(err, std::abs(fh[k] - s) / std::abs(s));
  }
  CHECK(err < 1e-12);

  // one-hot on an A3 node
  CVec g = CVec::Zero(T.N());
  const int k = q->offset(Block::A3) + 2;
  g[k] = 1.0;
  CVec u = T.inverse(g);
  const RVec x = physical_grid(64);
  for (int j = 0; j < 64; ++j) CHECK(std::abs(u[j] - std::exp(kI * z[k] * x[j])) < 1e-12);
}

TEST_CASE("1D oracle equivalence, direct and Chebyshev") {
  auto q = make_quad(64, 48, 10, 2);
  for (CMethod m : {CMethod::Direct, CMethod::Chebyshev}) {
    Transform1D T(q, {m, 0.0});
    CHECK(T.axis().uses_chebyshev() == (m == CMethod::Chebyshev));
    Rng rng(5);
    double ef = 0, ei = 0;
    for (int trial = 0; trial < 20; ++trial) {
      CVec f = rng.vec(64), g = rng.vec(T.N());
      CVec a = T.forward(f), b = dense_forward_1d(*q, f);
      CVec c = T.inverse(g), d = dense_inverse_1d(*q, g);
      ef = std::max(ef, (a - b).cwiseAbs().maxCoeff() / l1(f));
      ei = std::max(ei, (c - d).cwiseAbs().maxCoeff() / l1(g));
    }
    CHECK(ef < 1e-12);
    CHECK(ei < 1e-12);
  }
}

TEST_CASE("Chebyshev plan resolves the diagonal kernel") {
  auto q = make_quad(64, 48, 10, 3);
  Transform1D T(q, {CMethod::Chebyshev, 0.0});
  const auto& P = T.axis().cheb();
  CHECK(P.residual <= 1e-10);
  CHECK(P.nc >= int(std::ceil(2 * q->H)) + 8);
  CHECK(P.T.rows() == q->size(Block::C));
}

TEST_CASE("linearity") {
  auto q = make_quad(64, 48, 10, 2);
  Transform1D T(q);
  Rng rng(3);
  CVec f = rng.vec(64), g = rng.vec(64);
  cplx a(0.3, -1.2), b(2.0, 0.5);
  CVec lhs = T.forward(a * f + b * g), rhs = a * T.forward(f) + b * T.forward(g);
  CHECK((lhs - rhs).norm() < 1e-13 * rhs.norm());
}

TEST_CASE("mirrored blocks of a real input") {
  // f real: fhat(-zeta) = conj(sum_j exp(-i conj(zeta) x_j) f_j)
  auto q = make_quad(64, 48, 10, 2);
  Transform1D T(q);
  std::mt19937 g(2);
  std::uniform_real_distribution<double> u(-1, 1);
  CVec f(64);
  for (auto& v : f) v = u(g);
  CVec fh = T.forward(f);
  const RVec x = physical_grid(64);
  const auto& z3 = q->block_nodes(Block::E3);
  const int n = q->size(Block::E1);
  double err = 0;
  for (int k = 0; k < n; ++k) {
    cplx s = 0;
    for (int j = 0; j < 64; ++j) s += std::exp(-kI * std::conj(z3[n - 1 - k]) * x[j]) * f[j];
    err = std::max(err, std::abs(fh[q->offset(Block::E1) + k] - std::conj(s)));
  }
  CHECK(err < 1e-12 * l1(f));
}

TEST_CASE("reconstruction of a smooth function") {
  contour::ContourConfig c;
  c.eps = 1e-10;
  c.M = 96;
  c.p = 8;
  c.q = 16;
  c.nr = 2;
  c.NE = contour::ne_for_spacing(96, 8, 0.4);
  auto q = std::make_shared<contour::GammaQuadrature>(contour::build_quadrature(c));
  Transform1D T(q);
  const RVec x = physical_grid(96);
  CVec f(96);
  for (int j = 0; j < 96; ++j) f[j] = std::exp(-x[j] * x[j] / 0.02) * std::cos(3 * x[j]);
  CVec w = Eigen::Map<const CVec>(q->all_weights().data(), T.N());
  CVec fh = (2.0 / 96) * T.forward(f);
  CVec back = T.inverse(CVec(w.cwiseProduct(fh))) / (2 * kPi);
  CHECK((back - f).cwiseAbs().maxCoeff() < c.eps);
}

TEST_CASE("2D transforms") {
  auto q = make_quad(32, 24, 6, 2, 1.0, 2);
  Transform2D T(q, q);
  const int N = q->total();
  CHECK(T.forward(CMat::Zero(32, 32)).norm() == 0.0);
  CHECK(T.inverse(CMat::Zero(N, N)).norm() == 0.0);

  Rng rng(9);
  // separable input
  CVec g = rng.vec(32), h = rng.vec(32);
  CMat f = g * h.transpose();
  Transform1D T1(q);
  CMat sep = T1.forward(g) * T1.forward(h).transpose();
  CMat ff = T.forward(f);
  CHECK((ff - sep).norm() < 1e-12 * sep.norm());

  // one-hot on (A1, A1)
  CMat e = CMat::Zero(N, N);
  const int a = q->offset(Block::A1) + 1, b = q->offset(Block::A1) + 3;
  e(a, b) = 1.0;
  CMat u = T.inverse(e);
  auto z = q->all_nodes();
  const RVec x = physical_grid(32);
  double err = 0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      err = std::max(err, std::abs(u(i, j) - std::exp(kI * (z[a] * x[i] + z[b] * x[j]))));
  CHECK(err < 1e-12);

  for (int trial = 0; trial < 3; ++trial) {
    CMat r = rng.mat(32, 32), s = rng.mat(N, N);
    CMat df = dense_forward_2d(*q, *q, r), di = dense_inverse_2d(*q, *q, s);
    CHECK((T.forward(r) - df).norm() < 1e-11 * df.norm());
    CHECK((T.inverse(s) - di).norm() < 1e-11 * di.norm());
  }
}

TEST_CASE("2D anisotropic axes, all 25 blocks") {
  auto q0 = make_quad(32, 24, 6, 2, 1.0, 2);
  auto q1 = make_quad(24, 40, 5, 1, 0.0, 2, 1e-8);
  for (CMethod m : {CMethod::Direct, CMethod::Chebyshev}) {
    Transform2D T(q0, q1, {m, 0.0});
    Rng rng(21);
    CMat r = rng.mat(32, 24), s = rng.mat(q0->total(), q1->total());
    CMat a = T.forward(r), b = dense_forward_2d(*q0, *q1, r);
    CMat c = T.inverse(s), d = dense_inverse_2d(*q0, *q1, s);
    auto L0 = BlockLayout::of(*q0), L1 = BlockLayout::of(*q1);
    for (auto b0 : contour::kBlocks)
      for (auto b1 : contour::kBlocks) {
        if (L0.len(b0) == 0 || L1.len(b1) == 0) continue;
        auto blk = [&](const CMat& M) {
          return CMat(M.block(L0.off(b0), L1.off(b1), L0.len(b0), L1.len(b1)));
        };
        CHECK((blk(a) - blk(b)).norm() <= 1e-11 * b.norm());
      }
    CHECK((c - d).norm() < 1e-11 * d.norm());
  }
}

TEST_CASE("call counters") {
  auto q = make_quad(64, 48, 10, 2);
  Transform1D T(q);
  T.forward(CVec::Ones(64));
  T.forward(CVec::Ones(64));
  T.inverse(CVec::Ones(T.N()));
  CHECK(T.forward_calls() == 2);
  CHECK(T.inverse_calls() == 1);
}

TEST_CASE("forward cost is quasi-linear in NE") {
  using Clock = std::chrono::steady_clock;
  auto best = [](const Transform1D& T, const CVec& f) {
    double b = 1e30;
    for (int rep = 0; rep < 7; ++rep) {
      auto t0 = Clock::now();
      for (int i = 0; i < 40; ++i) T.forward(f);
      b = std::min(b, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return b;
  };
  auto q1 = make_quad(256, 1024, 10, 1, 0.0);
  auto q2 = make_quad(256, 2048, 10, 1, 0.0);
  Transform1D T1(q1, {CMethod::Direct, 0.0}), T2(q2, {CMethod::Direct, 0.0});
  CVec f = Rng(1).vec(256);
  CHECK(best(T2, f) <= 2.5 * best(T1, f));
}
