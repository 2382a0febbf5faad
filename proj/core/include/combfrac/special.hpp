#pragma once

#include "combfrac/common.hpp"

namespace combfrac {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), entire.
cplx faddeeva(cplx z);

// exp(z^2) erfc(-z) = E_{1/2}(z).
cplx erfc_scaled_neg(cplx z);

// 1/Gamma(x), zero at the poles.
double rgamma(double x);

}  // namespace combfrac
