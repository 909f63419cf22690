#pragma once

#include "tdse/core.hpp"
#include "tdse/problems/field.hpp"

namespace tdse::problems {

struct WavepacketParams {
  double sigma = 0.1;
  double k0 = 0.0;
};

// Free Gaussian wavepacket, unit L2 norm. With a field the packet is carried
// rigidly: u(x, t) = u_free(x + phi(t), t).
cplx wavepacket(const WavepacketParams& p, double x, double t);
cplx wavepacket(const WavepacketParams& p, double x, double t, const FieldModel& field);

// Fourier transform int exp(-i zeta x) u(x, 0) dx, continued to complex zeta.
cplx wavepacket_transform(const WavepacketParams& p, cplx zeta);

}  // namespace tdse::problems
