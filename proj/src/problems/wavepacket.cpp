#include "tdse/problems/wavepacket.hpp"

#include <cmath>

namespace tdse::problems {

cplx wavepacket(const WavepacketParams& p, double x, double t) {
  const double s = p.sigma;
  const cplx den = s * s + 2.0 * kI * t;
  const cplx a = x / std::sqrt(2.0) - kI * s * p.k0 / 2.0;
  return std::sqrt(s) / (std::pow(kPi, 0.25) * std::sqrt(den)) *
         std::exp(-a * a / den - p.k0 * p.k0 / 4.0);
}

cplx wavepacket(const WavepacketParams& p, double x, double t, const FieldModel& field) {
  return wavepacket(p, x + field.phi(t), t);
}

cplx wavepacket_transform(const WavepacketParams& p, cplx zeta) {
  // u0(x) = C exp(-x^2/(2 s^2) + i kappa x) with kappa = k0/(sqrt(2) s)
  const double s = p.sigma;
  const double C = std::sqrt(s) / (std::pow(kPi, 0.25) * s);
  const cplx w = zeta - p.k0 / (std::sqrt(2.0) * s);
  return C * s * std::sqrt(2.0 * kPi) * std::exp(-s * s * w * w / 2.0);
}

}  // namespace tdse::problems
