#pragma once

#include <functional>

#include "combfrac/common.hpp"

namespace combfrac {

struct QuadResult {
  cplx value = 0.0;
  double error = 0.0;  // absolute estimate
  int intervals = 0;
  bool converged = false;
};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_intervals = 4000;
};

using ComplexIntegrand = std::function<cplx(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on [a, b].
QuadResult integrate(const ComplexIntegrand& f, double a, double b, const QuadOptions& opt = {});

// [a, inf) through x = a + t/(1-t).
QuadResult integrate_to_infinity(const ComplexIntegrand& f, double a, const QuadOptions& opt = {});

}  // namespace combfrac
