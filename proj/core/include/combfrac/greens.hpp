#pragma once

#include <optional>
#include <string>

#include "combfrac/quadrature.hpp"
#include "combfrac/transforms.hpp"

namespace combfrac {

// `printed` evaluates the formulas as typeset; `derived` uses the independently
// re-derived signs (numerator -i hbar in the Laplace image, +i phase and
// e^{-3 i pi/4} prefactor in the u-integral).
enum class GreensForm { derived, printed };

struct GreensQuery {
  std::optional<double> lambda;
  std::optional<double> dx_abs;
  double y = 0.0;
  double t = 1.0;
  double hbar = 1.0;

  void validate() const;
};

struct GreensValue {
  cplx value = 0.0;
  double error_estimate = 0.0;
};

cplx greens_laplace(double lambda, double y, cplx s, double hbar, GreensForm form = GreensForm::derived);

GreensValue greens_time(double lambda, double y, double t, double hbar, const BromwichContour& contour,
                        GreensForm form = GreensForm::derived);

GreensValue greens_u_integral(const GreensQuery& q, GreensForm form = GreensForm::derived);

// Closed form of the derived Green's function via the Faddeeva function.
cplx greens_closed_form(double lambda, double y, double t, double hbar);

struct IabResult {
  cplx quadrature = 0.0;
  double error_estimate = 0.0;
  cplx bessel_form = 0.0;   // sqrt(pi/B) e^{-2 sqrt(AB)}
  cplx printed_form = 0.0;  // sqrt(pi/(4 sqrt(AB))) e^{+2 sqrt(AB)}
  double rotation = 0.0;    // u -> e^{i rotation} u
};

// Integral of exp(-A/u - B u) u^{-1/2} over (0, inf), rotating u so that both
// exponents decay.
IabResult i_ab(cplx A, cplx B, const QuadOptions& opt = {1e-14, 1e-12, 4000});

GreensValue greens_free_quadrature(double dx_abs, double y, double t, double hbar,
                                   GreensForm form = GreensForm::printed);

// Same object from the u-integral with the free heat kernel; cross-check.
GreensValue greens_free_u_route(double dx_abs, double y, double t, double hbar,
                                GreensForm form = GreensForm::printed);

enum class StationaryPhaseForm { generic, paper_printed };

struct StationaryPhaseResult {
  cplx value = 0.0;
  double xi0 = 0.0;
  bool warning = false;  // hbar t < 100
  bool defined = true;   // false where the printed form is singular
  std::string note;
};

StationaryPhaseResult greens_stationary_phase(double dx_abs, double y, double t, double hbar,
                                              StationaryPhaseForm form);

// Stationary point of the printed phase hbar t xi^2 - xi |y|.
double printed_stationary_point(double y, double t, double hbar);
// d/dxi of the printed phase.
double printed_phase_derivative(double xi, double y, double t, double hbar);

}  // namespace combfrac
