#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "doctest.h"
#include "tdse/problems/field.hpp"
#include "tdse/problems/ground_state.hpp"
#include "tdse/problems/potential.hpp"
#include "tdse/problems/wavepacket.hpp"

using namespace tdse;
using namespace tdse::problems;
using boost::math::quadrature::gauss_kronrod;

namespace {

double integrate(const std::function<double(double)>& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b) {
  return {integrate([&](double x) { return f(x).real(); }, a, b),
          integrate([&](double x) { return f(x).imag(); }, a, b)};
}

}  // namespace

TEST_CASE("field antiderivative") {
  FieldModel zero;
  CHECK(zero.is_zero());
  CHECK(zero.phi(0.3) == 0.0);
  CHECK(zero.A(0.3) == 0.0);

  FieldSpec s{100.0, 100.0, 0.5, 0};
  auto F = FieldModel::pulse(s);
  CHECK(F.phi(0.0) == 0.0);
  CHECK(F.A(0.0) == 0.0);
  CHECK(std::abs(F.A(0.5)) < 1e-12);
  auto A = [&](double t) { return pulse_A(s, t); };
  double worst = 0;
  for (int i = 1; i <= 100; ++i) {
    double t = 0.5 * i / 100;
    worst = std::max(worst, std::abs(F.phi(t) - integrate_A(A, 0.0, t)));
  }
  CHECK(worst < 1e-13);
  CHECK_THROWS(F.phi(-0.1));

  auto G = FieldModel::callback(A, 0.5);
  CHECK(G.phi(0.0) == 0.0);
  for (double t : {0.01, 0.2, 0.33, 0.5}) CHECK(std::abs(G.phi(t) - F.phi(t)) < 1e-13);
}

TEST_CASE("wavepacket closed form") {
  WavepacketParams p{0.1, 0.0};
  CHECK(wavepacket(p, 0.2, 0.0).imag() == 0.0);
  CHECK(wavepacket(p, 0.2, 0.0) == wavepacket(p, -0.2, 0.0));
  for (double t : {0.0, 0.05, 0.1}) {
    double n = integrate([&](double x) { return std::norm(wavepacket(p, x, t)); }, -20, 20);
    CHECK(std::abs(n - 1.0) < 1e-12);
  }
  // modulus at the centre
  for (double t : {0.01, 0.1, 1.0}) {
    double expect = std::abs(wavepacket(p, 0, 0)) * p.sigma /
                    std::pow(std::pow(p.sigma, 4) + 4 * t * t, 0.25);
    CHECK(std::abs(wavepacket(p, 0, t)) == doctest::Approx(expect).epsilon(1e-13));
  }
  // moving carrier keeps the norm
  WavepacketParams q{0.2, 30.0};
  double n = integrate([&](double x) { return std::norm(wavepacket(q, x, 0.05)); }, -20, 20);
  CHECK(std::abs(n - 1.0) < 1e-12);
}

TEST_CASE("wavepacket solves the free equation with a field") {
  // i u_t = -u_xx + i A u_x by central differences
  WavepacketParams p{0.1, 5.0};
  auto F = FieldModel::pulse({500.0, 500.0, 0.1, 0});
  // u oscillates about 2e4 times faster in t than in x
  const double t = 0.037, x = 0.13, et = 1e-7, ex = 1e-5;
  auto u = [&](double xx, double tt) { return wavepacket(p, xx, tt, F); };
  cplx ut = (u(x, t + et) - u(x, t - et)) / (2 * et);
  cplx ux = (u(x + ex, t) - u(x - ex, t)) / (2 * ex);
  cplx uxx = (u(x + ex, t) - 2.0 * u(x, t) + u(x - ex, t)) / (ex * ex);
  cplx res = kI * ut + uxx - kI * F.A(t) * ux;
  CHECK(std::abs(res) < 1e-5 * std::abs(ut));
  CHECK(u(x, t) == wavepacket(p, x + F.phi(t), t));
}

TEST_CASE("wavepacket transform at complex frequency") {
  WavepacketParams p{0.1, 3.0};
  for (cplx z : {cplx(0, 0), cplx(3, -1), cplx(-10, 2), cplx(25, -4)}) {
    cplx ref = integrate_c([&](double x) { return std::exp(-kI * z * x) * wavepacket(p, x, 0); },
                           -2, 2);
    CHECK(std::abs(wavepacket_transform(p, z) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("potentials") {
  PotentialSpec well{PotentialSpec::Kind::GaussianWell, 1400.0, 0.1, 0.0};
  auto V = well.to_potential();
  CHECK(V(0, 0, 0) == doctest::Approx(-1400.0));
  CHECK(std::abs(V(1.0, 0, 0)) < 1e-18);
  CHECK(std::abs(V(-1.0, 0, 0)) < 1e-18);
  CHECK(V.is_static);
  CHECK_FALSE(V.is_zero);

  PotentialSpec mov{PotentialSpec::Kind::MovingPeriodicWell, 300.0, 0.2, 15.0};
  auto W = mov.to_potential();
  CHECK_FALSE(W.is_static);
  for (double x : {-3.0, -0.4, 0.0, 1.7})
    for (double t : {0.0, 0.05, 0.3}) {
      CHECK(W(x + 2 * kPi, 0, t) == doctest::Approx(W(x, 0, t)).epsilon(1e-13));
      CHECK(W(x, 0, t) == doctest::Approx(W(x - 15.0 * t, 0, 0)).epsilon(1e-12));
    }

  // L2 norm against quadrature
  double n1 = std::sqrt(integrate([&](double x) { return std::pow(V(x, 0, 0), 2); }, -2, 2));
  CHECK(well.l2_norm(1) == doctest::Approx(n1).epsilon(1e-12));
  double n2 = std::sqrt(integrate(
      [&](double r) { return 2 * kPi * r * std::pow(V(r, 0, 0), 2); }, 0, 2));
  CHECK(well.l2_norm(2) == doctest::Approx(n2).epsilon(1e-12));
  double np = std::sqrt(integrate([&](double x) { return std::pow(W(x, 0, 0), 2); }, -kPi, kPi));
  CHECK(mov.l2_norm(1) == doctest::Approx(np).epsilon(1e-10));

  CHECK(PotentialSpec{}.to_potential().is_zero);
  CHECK_THROWS_AS(potential_kind_from_string("square"), ConfigError);
  CHECK(potential_kind_from_string(to_string(PotentialSpec::Kind::MovingPeriodicWell)) ==
        PotentialSpec::Kind::MovingPeriodicWell);
}

TEST_CASE("ground states") {
  PotentialSpec w1{PotentialSpec::Kind::MovingPeriodicWell, 300.0, 0.2, 15.0};
  auto g1 = ground_state(w1, 1);
  CHECK(g1->eigenvalue == doctest::Approx(-243.0).epsilon(0.5 / 243));
  CHECK(g1->residual <= 1e-9);

  PotentialSpec w3{PotentialSpec::Kind::GaussianWell, 1400.0, 0.1, 0.0};
  auto g3 = ground_state(w3, 1);
  CHECK(std::abs(g3->eigenvalue + 1154.0) < 1.0);
  CHECK(g3->residual <= 1e-9);
  double n = integrate([&](double x) { return std::pow((*g3)(x), 2); }, -kPi, kPi);
  CHECK(std::abs(n - 1.0) < 1e-12);
  CHECK(std::abs((*g3)(1.0)) < 1e-12);
  CHECK(std::abs((*g3)(-1.0)) < 1e-12);

  auto g4 = ground_state(w3, 2);
  CHECK(std::abs(g4->eigenvalue + 922.0) < 1.0);
  CHECK(g4->residual <= 1e-9);
  double n2 = integrate([&](double r) { return 2 * kPi * r * std::pow((*g4)(r), 2); }, 0, 1.5);
  CHECK(std::abs(n2 - 1.0) < 1e-12);
  CHECK(std::abs((*g4)(1.0)) < 1e-11);
  // memoized
  CHECK(ground_state(w3, 2).get() == g4.get());
}
