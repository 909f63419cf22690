#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace tdse::problems {

// Pulse A(t) = A0 sin^2(pi t / T) cos(omega t) on [0, T], zero afterwards.
struct FieldSpec {
  double A0 = 0.0;
  double omega = 0.0;
  double T = 1.0;
  int axis = 0;  // 2D: component the field acts along
};

double pulse_A(const FieldSpec& f, double t);
double pulse_phi(const FieldSpec& f, double t);

// Uniform vector potential with its antiderivative phi(t) = int_0^t A.
// Callback fields integrate A adaptively and memoize phi at the times
// already requested, so marching only integrates over one step at a time.
class FieldModel {
 public:
  FieldModel() = default;
  static FieldModel pulse(const FieldSpec& spec);
  static FieldModel callback(std::function<double(double)> A, double T, int axis = 0);

  double A(double t) const;
  double phi(double t) const;
  bool is_zero() const { return kind_ == Kind::Zero; }
  int axis() const { return axis_; }
  double duration() const { return T_; }
  const FieldSpec& spec() const { return spec_; }

 private:
  enum class Kind { Zero, Pulse, Callback };
  struct Cache {
    std::mutex mu;
    std::map<double, double> phi;
  };
  Kind kind_ = Kind::Zero;
  FieldSpec spec_{};
  std::function<double(double)> A_;
  double T_ = 0.0;
  int axis_ = 0;
  std::shared_ptr<Cache> cache_;
};

// Adaptive Gauss-Kronrod integral of A over [a, b]; shared by the callback
// path and by tests that cross-check the closed form.
double integrate_A(const std::function<double(double)>& A, double a, double b);

}  // namespace tdse::problems
