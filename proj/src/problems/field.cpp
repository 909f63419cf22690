#include "tdse/problems/field.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tdse/core.hpp"

namespace tdse::problems {

namespace {

// int_0^t cos(a s) ds
double sinc_int(double a, double t) {
  if (std::abs(a * t) < 1e-8) return t * (1.0 - (a * t) * (a * t) / 6.0);
  return std::sin(a * t) / a;
}

}  // namespace

double pulse_A(const FieldSpec& f, double t) {
  if (t < 0.0 || t > f.T) return 0.0;
  const double s = std::sin(kPi * t / f.T);
  return f.A0 * s * s * std::cos(f.omega * t);
}

double pulse_phi(const FieldSpec& f, double t) {
  if (t < 0.0) throw ConfigError("phi: negative time");
  t = std::min(t, f.T);
  const double W = 2.0 * kPi / f.T;
  return 0.5 * f.A0 *
         (sinc_int(f.omega, t) - 0.5 * sinc_int(f.omega + W, t) -
          0.5 * sinc_int(f.omega - W, t));
}

double integrate_A(const std::function<double(double)>& A, double a, double b) {
  if (a == b) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 31>::integrate(A, a, b, 15, 1e-14, &err);
}

FieldModel FieldModel::pulse(const FieldSpec& spec) {
  if (!(spec.T > 0.0)) throw ConfigError("pulse duration must be positive");
  if (spec.axis < 0 || spec.axis > 1) throw ConfigError("field axis must be 0 or 1");
  FieldModel m;
  m.kind_ = spec.A0 == 0.0 ? Kind::Zero : Kind::Pulse;
  m.spec_ = spec;
  m.T_ = spec.T;
  m.axis_ = spec.axis;
  return m;
}

FieldModel FieldModel::callback(std::function<double(double)> A, double T, int axis) {
  if (!A) throw ConfigError("empty field callback");
  if (!(T > 0.0)) throw ConfigError("field duration must be positive");
  FieldModel m;
  m.kind_ = Kind::Callback;
  m.A_ = std::move(A);
  m.T_ = T;
  m.axis_ = axis;
  m.cache_ = std::make_shared<Cache>();
  m.cache_->phi.emplace(0.0, 0.0);
  return m;
}

double FieldModel::A(double t) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Pulse: return pulse_A(spec_, t);
    case Kind::Callback: return A_(t);
  }
  return 0.0;
}

double FieldModel::phi(double t) const {
  if (t < 0.0) throw ConfigError("phi: negative time");
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Pulse: return pulse_phi(spec_, t);
    case Kind::Callback: break;
  }
  std::lock_guard lock(cache_->mu);
  auto& c = cache_->phi;
  auto it = c.find(t);
  if (it != c.end()) return it->second;
  auto lo = std::prev(c.upper_bound(t));
  const double v = lo->second + integrate_A(A_, lo->first, t);
  c.emplace(t, v);
  return v;
}

}  // namespace tdse::problems
