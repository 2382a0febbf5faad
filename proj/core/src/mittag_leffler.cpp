#include <cmath>
#include <limits>

#include "combfrac/fraccalc.hpp"
#include "combfrac/quadrature.hpp"

namespace combfrac {

namespace {

cplx ml_series(double alpha, cplx z, const MittagLefflerOptions& opt, double& tail) {
  // |z| <= series_radius keeps every term below the leading one in size.
  cplx sum = 1.0;
  const double lz = std::log(std::abs(z));
  const double az = std::arg(z);
  tail = 0.0;
  double largest = 1.0;
  for (int k = 1; k < opt.max_terms; ++k) {
    const double lg = std::lgamma(alpha * k + 1.0);
    const double mag = std::exp(k * lz - lg);
    largest = std::max(largest, mag);
    sum += std::polar(mag, k * az);
    if (mag < 0.25 * opt.tolerance * std::max(1.0, std::abs(sum)) && k > 3) {
      tail = mag;
      // Rounding in the partial sums scales with the largest term.
      const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * largest * std::sqrt(static_cast<double>(k));
      if (rounding > opt.tolerance * std::max(1.0, std::abs(sum)))
        throw Error(ErrorKind::precision_loss, "mittag_leffler: series cancellation exceeds the tolerance", rounding);
      return sum;
    }
  }
  throw Error(ErrorKind::precision_loss, "mittag_leffler: series did not converge", tail);
}

}  // namespace

cplx mittag_leffler(FracOrder order, cplx z, const MittagLefflerOptions& opt) {
  order.require_derivative_range();
  const double a = order.alpha;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::invalid_input, "mittag_leffler: non-finite argument");
  if (a == 1.0 && opt.closed_forms) return std::exp(z);
  if (z == cplx(0.0)) return 1.0;
  const double r = std::abs(z);
  double tail = 0.0;
  if (r <= opt.series_radius) return ml_series(a, z, opt, tail);

  // Pole s* = z^{1/a} on the principal sheet when |arg z|/a < pi.
  const double phi = std::abs(std::arg(z)) / a;
  double theta = pi;
  bool residue = phi < pi;
  if (phi > 7.0 * pi / 8.0 && phi <= pi) {
    theta = phi - pi / 4.0;
    residue = false;
  } else if (phi > pi) {
    theta = 3.0 * pi / 4.0;
  }

  cplx value = 0.0;
  if (residue) value = std::exp(std::pow(r, 1.0 / a) * std::polar(1.0, std::arg(z) / a)) / a;

  // Rays s = rho e^{+-i theta} with rho = u^{1/a}; the s^{a-1} ds factor becomes du/a.
  const cplx ep = std::polar(1.0, a * theta);
  const cplx em = std::conj(ep);
  const cplx rp = std::polar(1.0, theta);
  const cplx rm = std::conj(rp);
  auto g = [&](double u) -> cplx {
    const double rho = std::pow(u, 1.0 / a);
    return (std::exp(rho * rp) * ep / (u * ep - z) - std::exp(rho * rm) * em / (u * em - z)) / a;
  };
  // exp(rho cos theta) < 1e-18 beyond rho_max.
  const double rho_max = 42.0 / std::abs(std::cos(theta));
  const double u_max = std::pow(rho_max, a);
  // Split at |z| where the integrand varies fastest.
  QuadOptions q;
  q.abs_tol = 0.05 * opt.tolerance;
  q.rel_tol = 0.05 * opt.tolerance;
  const double mid = std::min(r, 0.5 * u_max);
  const QuadResult i1 = integrate(g, 0.0, mid, q);
  const QuadResult i2 = integrate(g, mid, u_max, q);
  const cplx i1v = i1.value, i2v = i2.value;
  const double err1 = i1.error, err2 = i2.error;
  value += (i1v + i2v) / (2.0 * pi * I);
  const double err = (err1 + err2) / (2.0 * pi);
  if (err > 10.0 * opt.tolerance * std::max(1.0, std::abs(value)))
    throw Error(ErrorKind::precision_loss, "mittag_leffler: quadrature tolerance not reached", err);
  return value;
}

}  // namespace combfrac
