#include <cmath>

#include "doctest.h"
#include "tdse/contour/quadrature.hpp"
#include "tdse/freespace/solver.hpp"
#include "tdse/problems/ground_state.hpp"
#include "tdse/problems/wavepacket.hpp"
#include "tdse/xform/coeffs.hpp"

using namespace tdse;
using namespace tdse::freespace;
using problems::FieldModel;
using problems::PotentialSpec;
using problems::WavepacketParams;

namespace {

std::shared_ptr<const contour::GammaQuadrature> quad(int M, double h, double eps, double phimax,
                                                     double Vnorm = 0.0, int q = 16, int nr = 2,
                                                     int d = 1) {
  contour::ContourConfig c;
  c.eps = eps;
  c.M = M;
  c.p = 8;
  c.q = q;
  c.nr = nr;
  c.d = d;
  c.phimax = phimax;
  c.Vnorm = Vnorm;
  c.NE = contour::ne_for_spacing(M, 8, h);
  return std::make_shared<contour::GammaQuadrature>(contour::build_quadrature(c));
}

CMat packet(const WavepacketParams& p, int M, double t, const FieldModel& F = {}) {
  const RVec x = xform::physical_grid(M);
  CMat u(M, 1);
  for (int j = 0; j < M; ++j) u(j, 0) = problems::wavepacket(p, x[j], t, F);
  return u;
}

double l2(const CMat& a, const CMat& b) {
  return std::sqrt((a - b).squaredNorm() * 2.0 / a.rows());
}

PotentialSpec well() { return {PotentialSpec::Kind::GaussianWell, 1400.0, 0.1, 0.0}; }

CMat ground(int M) {
  auto gs = problems::ground_state(well(), 1);
  const RVec x = xform::physical_grid(M);
  CMat u(M, 1);
  for (int j = 0; j < M; ++j) u(j, 0) = (*gs)(x[j]);
  return u;
}

}  // namespace

TEST_CASE("propagator uses the complex square") {
  const cplx z(3.0, -1.5);
  const double span = 0.1;
  CHECK(std::abs(spectral_propagator(z, span, 0.0) - std::exp(-kI * z * z * span)) < 1e-15);
  CHECK(std::abs(spectral_propagator(z, span, 0.0) - std::exp(-kI * std::norm(z) * span)) > 0.1);
  CHECK(std::abs(spectral_propagator(z, span, 0.2) -
                 std::exp(-kI * z * z * span + kI * z * 0.2)) < 1e-15);
}

TEST_CASE("initialization") {
  WavepacketParams p{0.1, 0.0};
  auto q = quad(64, 0.5, 1e-10, 0.0);
  FreeSolver s(q, {}, {}, 8, 1e-3);
  s.initialize(CMat::Zero(64, 1));
  CHECK(s.state().uhat.norm() == 0.0);

  s.initialize(packet(p, 64, 0.0));
  auto z = q->all_nodes();
  double err = 0, big = 0;
  for (size_t k = 0; k < z.size(); ++k) {
    cplx ex = problems::wavepacket_transform(p, z[k]);
    err = std::max(err, std::abs(s.state().uhat(k, 0) - ex));
    big = std::max(big, std::abs(ex));
  }
  CHECK(err < 1e-10 * big);

  // support violation
  CHECK_THROWS_AS(s.initialize(packet({1.0, 0.0}, 64, 0.0)), ConfigError);
  CHECK_THROWS_AS(s.initialize(CMat::Zero(32, 1)), ConfigError);

  // Example-3 ground state is supported in the box
  auto q3 = quad(100, 0.5, 1e-10, 1.0, well().l2_norm(1), 10, 1);
  FreeSolver g(q3, well().to_potential(), {}, 8, 1e-4);
  CHECK_NOTHROW(g.initialize(ground(100)));
}

TEST_CASE("free wavepacket has no time discretization error") {
  WavepacketParams p{0.1, 0.0};
  auto q = quad(64, 0.5, 1e-14, 0.0);
  for (int n : {2, 8}) {
    FreeSolver s(q, {}, {}, n, 0.1 / 20);
    s.initialize(packet(p, 64, 0.0));
    double E = 0;
    for (int k = 0; k < 20; ++k) {
      s.step();
      E = std::max(E, l2(s.state().u, packet(p, 64, s.state().t)));
    }
    CHECK(E < 1e-12);
  }
}

TEST_CASE("advected wavepacket under a pulse") {
  WavepacketParams p{0.1, 0.0};
  auto F = FieldModel::pulse({500.0, 500.0, 0.1, 0});
  const double phimax = contour::quiver_radius(F, 0.1);
  auto q = quad(64, 0.42, 1e-14, phimax);
  FreeSolver s(q, {}, F, 8, 0.1 / 50);
  s.initialize(packet(p, 64, 0.0));
  double E = 0;
  for (int k = 0; k < 50; ++k) {
    s.step();
    E = std::max(E, l2(s.state().u, packet(p, 64, s.state().t, F)));
  }
  CHECK(E < 1e-12);
}

TEST_CASE("wavepacket leaves the box without reflection") {
  WavepacketParams p{0.1, 6.0};  // group velocity about 85
  auto q = quad(128, 0.3, 1e-14, 0.0);
  FreeSolver s(q, {}, {}, 2, 0.1 / 40);
  s.initialize(packet(p, 128, 0.0));
  double E = 0;
  for (int k = 0; k < 40; ++k) {
    s.step();
    E = std::max(E, l2(s.state().u, packet(p, 128, s.state().t)));
  }
  CHECK(E < 1e-10);
  CHECK(s.ionization_fraction() > 0.999);
}

TEST_CASE("a zero-length step reproduces the state") {
  WavepacketParams p{0.1, 0.0};
  auto q = quad(64, 0.5, 1e-12, 0.0);
  FreeSolver s(q, {}, {}, 2, 1e-3);
  CMat u0 = packet(p, 64, 0.0);
  s.initialize(u0);
  s.step_trapezoidal(0.0);
  CHECK((s.state().u - u0).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("order 2 Adams is the trapezoidal rule") {
  auto q = quad(100, 0.5, 1e-10, 0.0, well().l2_norm(1), 10, 1);
  FreeSolver a(q, well().to_potential(), {}, 2, 1e-4), b(q, well().to_potential(), {}, 2, 1e-4);
  a.initialize(ground(100));
  b.initialize(ground(100));
  for (int i = 0; i < 5; ++i) {
    a.step();
    b.step_trapezoidal(1e-4);
  }
  CHECK((a.state().u - b.state().u).cwiseAbs().maxCoeff() < 1e-13);
  FreeSolver c(q, well().to_potential(), {}, 8, 1e-4);
  c.initialize(ground(100));
  CHECK_THROWS_AS(c.step_adams(), NumericsError);
}

TEST_CASE("one Richardson level on both u and uhat") {
  auto q = quad(100, 0.5, 1e-10, 1.0, well().l2_norm(1), 10, 1);
  auto V = well().to_potential();
  auto F = FieldModel::pulse({100.0, 100.0, 0.5, 0});
  const double dt = 5e-4;
  FreeSolver s(q, V, F, 4, dt), one(q, V, F, 2, dt), two(q, V, F, 2, dt);
  for (auto* x : {&s, &one, &two}) x->initialize(ground(100));
  s.step();
  one.step_trapezoidal(dt);
  two.step_trapezoidal(dt / 2);
  two.step_trapezoidal(dt / 2);
  CMat eu = (4.0 * two.state().u - one.state().u) / 3.0;
  CMat eh = (4.0 * two.state().uhat - one.state().uhat) / 3.0;
  CHECK((s.state().u - eu).cwiseAbs().maxCoeff() < 1e-13 * eu.cwiseAbs().maxCoeff());
  CHECK((s.state().uhat - eh).cwiseAbs().maxCoeff() < 1e-13 * eh.cwiseAbs().maxCoeff());
}

TEST_CASE("transform count per step is independent of the order") {
  auto q = quad(100, 0.5, 1e-10, 0.0, well().l2_norm(1), 10, 1);
  for (int n : {2, 4, 8}) {
    FreeSolver s(q, well().to_potential(), {}, n, 1e-4);
    s.initialize(ground(100));
    s.richardson_startup();
    const long f0 = s.forward_calls(), i0 = s.inverse_calls();
    s.advance(6);
    CHECK(s.forward_calls() - f0 == 6);
    CHECK(s.inverse_calls() - i0 == 6);
  }
}

TEST_CASE("bound state stays in the box") {
  auto q = quad(100, 0.5, 1e-10, 0.0, well().l2_norm(1), 10, 1);
  FreeSolver s(q, well().to_potential(), {}, 8, 0.05 / 400);
  s.initialize(ground(100));
  s.advance(400);
  CHECK(std::abs(s.ionization_fraction()) < 1e-5);
}

TEST_CASE("evaluation outside the box") {
  WavepacketParams p{0.1, 0.0};
  const double eps = 1e-12;
  // leg interpolation needs a few nodes per turn of exp(-i zeta^2 t)
  auto q = quad(64, 0.2, eps, 0.0);
  FreeSolver s(q, {}, {}, 2, 0.05 / 10);
  s.initialize(packet(p, 64, 0.0));
  s.advance(10);
  const double t = s.state().t;
  auto v = s.evaluate_exterior({{2.0, 0.0}, {-1.7, 0.0}, {0.25, 0.0}}, 2.0);
  CHECK(std::abs(v[0] - problems::wavepacket(p, 2.0, t)) < 10 * eps);
  CHECK(std::abs(v[1] - problems::wavepacket(p, -1.7, t)) < 10 * eps);
  // 0.25 is grid point 40
  CHECK(std::abs(v[2] - s.state().u(40, 0)) < eps);
  CHECK_THROWS_AS(s.evaluate_exterior({{2.5, 0.0}}, 2.0), ConfigError);

  FreeSolver z(q, {}, {}, 2, 0.01);
  z.initialize(CMat::Zero(64, 1));
  CHECK(z.evaluate_exterior({{1.5, 0.0}}, 2.0).norm() == 0.0);
}

TEST_CASE("2D wavepacket with a field along x") {
  WavepacketParams p{0.1, 0.0};
  auto F = FieldModel::pulse({100.0, 100.0, 0.1, 0});
  const double phimax = contour::quiver_radius(F, 0.1);
  auto q0 = quad(48, 0.4, 1e-12, phimax, 0.0, 12, 2, 2);
  auto q1 = quad(48, 0.5, 1e-12, 0.0, 0.0, 12, 2, 2);
  FreeSolver s(q0, q1, {}, F, 2, 0.1 / 8);
  const RVec x = xform::physical_grid(48);
  auto exact = [&](double t) {
    CMat u(48, 48);
    for (int i = 0; i < 48; ++i)
      for (int j = 0; j < 48; ++j)
        u(i, j) = problems::wavepacket(p, x[i], t, F) * problems::wavepacket(p, x[j], t);
    return u;
  };
  s.initialize(exact(0.0));
  s.advance(8);
  double E = std::sqrt((s.state().u - exact(s.state().t)).squaredNorm() * (2.0 / 48) * (2.0 / 48));
  CHECK(E < 1e-10);
}
