#pragma once

#include <functional>
#include <vector>

#include "combfrac/fraccalc.hpp"

namespace combfrac {

struct CombField;

// Vertical line Re s = sigma sampled at s = sigma + i*k*h, |k| <= n_samples,
// h = omega_max/n_samples.
struct BromwichContour {
  double sigma = 2.0;
  double omega_max = 64.0 * pi / 6.0;
  int n_samples = 64;

  double spacing() const { return omega_max / n_samples; }
  void validate() const;

  // sigma = 2/t and spacing pi/(6t), the half-period of the implied Fourier
  // series being 6t.
  static BromwichContour for_time(double t, int n_samples = 64);
};

struct LaplaceOptions {
  double tolerance = 1e-8;
  // Accept T*Re(s) < 20.
  bool allow_short_window = false;
};

struct LaplaceResult {
  cplx value = 0.0;
  double truncation_estimate = 0.0;
  bool warning = false;
};

// Integral of e^{-st} f(t) over the sampled window, exact for the
// piecewise-linear interpolant of f.
LaplaceResult laplace_forward(const SampledFunction& f, cplx s, const LaplaceOptions& opt = {});

// Same quadrature applied to every component of a vector-valued series.
std::vector<cplx> laplace_forward_columns(const std::vector<CVector>& series, double t0, double dt, cplx s);

struct InversionResult {
  cplx value = 0.0;
  double error_estimate = 0.0;
  int n_samples = 0;
};

struct BromwichOptions {
  double tolerance = 1e-8;
  int max_samples = 4096;
};

using LaplaceImage = std::function<cplx(cplx)>;

// Trapezoid rule on the Bromwich line, summed as two one-sided Fourier series
// and accelerated with Wynn's epsilon. n_samples is doubled until successive
// results agree; two failed refinements raise precision-loss.
InversionResult bromwich_invert(const LaplaceImage& F, double t, const BromwichContour& contour,
                                const BromwichOptions& opt = {});

// Single evaluation at the contour's sample count, no refinement.
cplx bromwich_sum(const LaplaceImage& F, double t, const BromwichContour& contour);

// Wynn epsilon acceleration of a sequence of partial sums.
cplx wynn_epsilon(const std::vector<cplx>& partial_sums);

struct ModeField {
  double mode_l = 0.0;
  int index = 0;  // lattice index j, l = 2*pi*j/L_y
  CVector values;
};

// Psi_l(x) = dy * sum_y Psi(x, y) e^{-i l y} for every lattice l, FFT order.
std::vector<ModeField> fourier_modes_y(const CombField& field);

enum class SignConvention { derived, paper };

// y-Fourier image of exp[i(1+i) sqrt(s/hbar) |y|].
cplx kernel_fourier(cplx s, double l, double hbar, SignConvention sign = SignConvention::derived);

}  // namespace combfrac
