#pragma once

#include <vector>

#include "combfrac/common.hpp"

namespace combfrac::detail {

// c_k = sum_{j=0}^{k} w_j u_{k-j}, k = 0..u.size()-1. Direct below a size
// threshold, zero-padded FFT above.
// (k+1)^e - k^e without cancellation.
double pow_diff1(double k, double e);

// (m+1)^b - 2 m^b + (m-1)^b, m >= 1, without cancellation.
double pow_diff2(double m, double b);

std::vector<cplx> causal_convolve(const std::vector<double>& w, const std::vector<cplx>& u);

}  // namespace combfrac::detail
