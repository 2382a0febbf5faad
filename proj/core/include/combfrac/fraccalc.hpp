#pragma once

#include <cstddef>
#include <vector>

#include "combfrac/common.hpp"

namespace combfrac {

// Order of a fractional integral or derivative.
struct FracOrder {
  double alpha = 0.5;

  // Throws unless 0 < alpha <= 1.
  void require_derivative_range() const;
};

// Complex samples f(start + k*step), k = 0..n-1.
struct SampledFunction {
  double start = 0.0;
  double step = 1.0;
  std::vector<cplx> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t k) const { return start + step * static_cast<double>(k); }
  double end() const { return x(values.size() - 1); }

  // Throws invalid-input for step <= 0 or fewer than two samples.
  void validate() const;

  template <class F>
  static SampledFunction sample(F&& f, double start, double step, std::size_t n) {
    SampledFunction out{start, step, {}};
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = f(start + step * static_cast<double>(k));
    return out;
  }
};

// Riemann-Liouville integral I_a^alpha f by product integration of the
// piecewise-linear interpolant against the exact kernel. Second order on
// smooth data.
SampledFunction frac_integral(const SampledFunction& f, FracOrder order);

// Caputo derivative by the L1 scheme, b_k = (k+1)^{1-a} - k^{1-a}.
SampledFunction caputo_deriv(const SampledFunction& f, FracOrder order);

struct RlDerivative {
  SampledFunction values;
  // Indices where the derivative is infinite (x = start with f(start) != 0).
  std::vector<std::size_t> singular;
};

// Riemann-Liouville derivative d/dx I^{1-a} f of the piecewise-linear
// interpolant, evaluated exactly: f(a) (x-a)^{-a}/Gamma(1-a) plus the L1 sum.
RlDerivative rl_deriv(const SampledFunction& f, FracOrder order);

// Gamma(beta+1)/Gamma(beta+1-alpha) x^{beta-alpha}.
double rl_power_law(FracOrder order, double beta, double x);

struct WeylOptions {
  double taper_fraction = 0.1;
  // Maximum of |f| over the lower taper band relative to max |f|.
  double leakage_threshold = 1e-8;
  // Zero padding factor applied after tapering.
  int pad_factor = 32;
  // Repeat at twice the padded period and extrapolate away the periodic-image
  // offset.
  bool image_extrapolation = true;
  // Treat the samples as exactly one period; no taper, no padding, no check.
  bool periodic = false;
};

// Left Weyl derivative via the Fourier multiplier (ik)^alpha.
SampledFunction weyl_deriv(const SampledFunction& f, FracOrder order, const WeylOptions& opt = {});

struct MittagLefflerOptions {
  double tolerance = 1e-12;
  double series_radius = 1.0;
  int max_terms = 4000;
  // Return exp(z) directly at alpha = 1.
  bool closed_forms = true;
};

// E_alpha(z) for 0 < alpha <= 1. Series for small |z|, Hankel-ray integral
// plus residue otherwise. Throws precision-loss when the tolerance is missed.
cplx mittag_leffler(FracOrder order, cplx z, const MittagLefflerOptions& opt = {});

// Gamma ratio used by the closed-form oracles.
double gamma_ratio(double a, double b);

}  // namespace combfrac
