#pragma once

#include "helmdtn/common.hpp"

namespace helmdtn::sf {

/// Largest |order| accepted by the module.
inline constexpr int max_order = 64;

/// Bessel function of the first kind J_nu(x), integer order, x >= 0.
/// Negative orders use the reflection J_{-n} = (-1)^n J_n.
double bessel_j(int nu, double x);

/// Bessel function of the second kind Y_nu(x), integer order, x > 0.
double bessel_y(int nu, double x);

/// Hankel function of the first kind H^(1)_nu(x) = J_nu(x) + i Y_nu(x), x > 0.
cplx hankel1(int nu, double x);

/// d/dx H^(1)_nu(x) = (H^(1)_{nu-1}(x) - H^(1)_{nu+1}(x)) / 2, x > 0.
cplx hankel1_derivative(int nu, double x);

}  // namespace helmdtn::sf
