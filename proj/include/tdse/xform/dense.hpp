#pragma once

#include "tdse/contour/quadrature.hpp"
#include "tdse/core.hpp"

namespace tdse::xform {

// Reference transforms by direct summation over every (node, grid point)
// pair. Serial on purpose: these are the test oracles.
CVec dense_forward_1d(const contour::GammaQuadrature& q, const CVec& f);
CVec dense_inverse_1d(const contour::GammaQuadrature& q, const CVec& fhat);
CMat dense_forward_2d(const contour::GammaQuadrature& q0, const contour::GammaQuadrature& q1,
                      const CMat& f);
CMat dense_inverse_2d(const contour::GammaQuadrature& q0, const contour::GammaQuadrature& q1,
                      const CMat& fhat);

}  // namespace tdse::xform
