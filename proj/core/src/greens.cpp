#include "combfrac/greens.hpp"

#include <cmath>

#include "combfrac/special.hpp"

namespace combfrac {

void GreensQuery::validate() const {
  if (lambda.has_value() == dx_abs.has_value())
    throw Error(ErrorKind::invalid_input, "greens query: set exactly one of lambda and dx_abs");
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_input, "greens query: t must be positive", t);
  if (!(hbar > 0.0)) throw Error(ErrorKind::invalid_input, "greens query: hbar must be positive", hbar);
  if (dx_abs && *dx_abs < 0.0) throw Error(ErrorKind::invalid_input, "greens query: dx_abs must be non-negative");
}

cplx greens_laplace(double lambda, double y, cplx s, double hbar, GreensForm form) {
  const cplx r = std::sqrt(s / hbar);
  if (!(r.real() > 0.0)) throw Error(ErrorKind::invalid_input, "greens_laplace: Re sqrt(s/hbar) must be positive");
  const cplx den = lambda - I * (1.0 + I) * std::sqrt(hbar * hbar * hbar * s);
  if (std::abs(den) < 1e-12) throw Error(ErrorKind::pole_proximity, "greens_laplace: denominator vanishes", std::abs(den));
  const cplx num = (form == GreensForm::printed ? 1.0 : -1.0) * I * hbar;
  return num * std::exp(I * (1.0 + I) * r * std::abs(y)) / den;
}

GreensValue greens_time(double lambda, double y, double t, double hbar, const BromwichContour& contour,
                        GreensForm form) {
  auto F = [&](cplx s) { return greens_laplace(lambda, y, s, hbar, form); };
  const auto r = bromwich_invert(F, t, contour);
  return {r.value, r.error_estimate};
}

namespace {

QuadOptions tight() { return {1e-15, 1e-12, 4000}; }

}  // namespace

GreensValue greens_u_integral(const GreensQuery& q, GreensForm form) {
  q.validate();
  if (!q.lambda) throw Error(ErrorKind::invalid_input, "greens_u_integral: spectral form needs lambda");
  const double lam = *q.lambda, ay = std::abs(q.y), t = q.t, hb = q.hbar;
  // Rotate u onto the ray where the quadratic phase becomes a Gaussian.
  const double sgn = form == GreensForm::printed ? -1.0 : 1.0;
  const cplx rot = std::polar(1.0, sgn * pi / 4.0);
  const double width = std::sqrt(2.0 * t / (hb * hb * hb));
  auto f = [&](double v) -> cplx {
    const cplx u = rot * (width * v);
    const cplx w = ay + hb * hb * u;
    return w * std::exp(-u * lam + sgn * I * w * w / (2.0 * hb * t)) * rot * width;
  };
  const QuadResult r = integrate_to_infinity(f, 0.0, tight());
  const cplx pre = (form == GreensForm::printed ? std::sqrt(cplx(0.0, hb)) : std::polar(std::sqrt(hb), -0.75 * pi)) /
                   std::sqrt(2.0 * pi * t * t * t);
  if (!r.converged) throw Error(ErrorKind::precision_loss, "greens_u_integral: quadrature did not converge", std::abs(pre) * r.error);
  return {pre * r.value, std::abs(pre) * r.error};
}

cplx greens_closed_form(double lambda, double y, double t, double hbar) {
  if (!(t > 0.0) || !(hbar > 0.0)) throw Error(ErrorKind::invalid_input, "greens_closed_form: t and hbar must be positive");
  const cplx c = (1.0 - I) / std::sqrt(hbar);
  const cplx a = c * std::abs(y);
  const cplx beta = lambda / (hbar * hbar * c);
  const double st = std::sqrt(t);
  const cplx z = a / (2.0 * st) + beta * st;
  // exp(-a^2/4t) w(iz) combined to avoid overflow of either factor.
  const cplx w = faddeeva(I * z);
  return (-I / (hbar * c)) * (std::exp(-a * a / (4.0 * t)) / std::sqrt(pi * t) - beta * std::exp(-a * a / (4.0 * t)) * w);
}

IabResult i_ab(cplx A, cplx B, const QuadOptions& opt) {
  if (A.real() < 0.0) throw Error(ErrorKind::invalid_input, "i_ab: Re(A) must be non-negative", A.real());
  if (B == cplx(0.0)) throw Error(ErrorKind::invalid_input, "i_ab: B = 0 diverges");
  const double argA = A == cplx(0.0) ? 0.0 : std::arg(A);
  const double argB = std::arg(B);
  const double theta = 0.5 * (argA - argB);
  const cplx Ar = A * std::polar(1.0, -theta);
  const cplx Br = B * std::polar(1.0, theta);
  if (!(Br.real() > 0.0) || Ar.real() < -1e-15 * std::abs(Ar))
    throw Error(ErrorKind::invalid_input, "i_ab: no rotation makes both exponents decay", 0.5 * (argA + argB));

  // u = e^{i theta} v^2, v = s0 w.
  const double s0 = A == cplx(0.0) ? 1.0 / std::sqrt(std::abs(B)) : std::pow(std::abs(A) / std::abs(B), 0.25);
  const cplx pre = 2.0 * std::polar(1.0, 0.5 * theta) * s0;
  auto f = [&](double w) -> cplx {
    const double v = s0 * w;
    if (v == 0.0) return 0.0;
    const double v2 = v * v;
    const double re = -Ar.real() / v2 - Br.real() * v2;
    if (re < -745.0) return 0.0;
    return std::exp(-Ar / v2 - Br * v2);
  };
  const QuadResult q = integrate_to_infinity(f, 0.0, opt);
  IabResult res;
  res.quadrature = pre * q.value;
  res.error_estimate = std::abs(pre) * q.error;
  res.rotation = theta;
  const cplx sa = std::sqrt(A), sb = std::sqrt(B);
  res.bessel_form = std::sqrt(pi) / sb * std::exp(-2.0 * sa * sb);
  const cplx sab = std::sqrt(A * B);
  res.printed_form = sab == cplx(0.0) ? cplx(std::numeric_limits<double>::infinity())
                                      : std::sqrt(pi / (4.0 * sab)) * std::exp(2.0 * sab);
  if (!q.converged) throw Error(ErrorKind::precision_loss, "i_ab: quadrature did not converge", res.error_estimate);
  return res;
}

namespace {

// Printed xi-integral form after integrating the xi-derivative by parts:
// (hbar/(2 pi)^{3/2}) int xi e^{i hbar t xi^2/2 - i xi |y|} I(A, i hbar^2 xi) dxi,
// along xi = xi0 + e^{i pi/4} r through the stationary point.
GreensValue free_printed(double dx_abs, double y, double t, double hb) {
  const double ay = std::abs(y);
  const double xi0 = ay / (hb * t);
  const cplx A = dx_abs * dx_abs / (2.0 * hb * hb);
  const cplx dir = std::polar(1.0, pi / 4.0);
  const double width = 1.0 / std::sqrt(hb * t);
  const cplx phase0 = std::exp(-I * ay * ay / (2.0 * hb * t));
  double inner_err = 0.0;
  auto g = [&](double r) -> cplx {
    const cplx xi = xi0 + dir * r;
    if (xi == cplx(0.0)) return 0.0;
    const double gauss = std::exp(-0.5 * hb * t * r * r);
    if (gauss == 0.0) return 0.0;
    const auto ib = i_ab(A, I * hb * hb * xi, {1e-16, 1e-11, 4000});
    inner_err = std::max(inner_err, ib.error_estimate / std::max(std::abs(ib.quadrature), 1e-300));
    return xi * gauss * ib.quadrature;
  };
  // r = +-width w^2 removes the square-root branch point when xi0 = 0.
  auto side = [&](double sign) {
    auto h = [&](double w) -> cplx { return g(sign * width * w * w) * (2.0 * width * w); };
    return integrate_to_infinity(h, 0.0, {1e-15, 1e-9, 2000});
  };
  const QuadResult up = side(1.0), down = side(-1.0);
  const cplx pre = hb / std::pow(2.0 * pi, 1.5) * phase0 * dir;
  const cplx val = pre * (up.value + down.value);
  const double err = std::abs(pre) * (up.error + down.error) + inner_err * std::abs(val);
  if (!up.converged || !down.converged)
    throw Error(ErrorKind::precision_loss, "greens_free_quadrature: xi quadrature did not converge", err);
  return {val, err};
}

}  // namespace

GreensValue greens_free_quadrature(double dx_abs, double y, double t, double hbar, GreensForm form) {
  if (!(t > 0.0) || !(hbar > 0.0)) throw Error(ErrorKind::invalid_input, "greens_free_quadrature: t and hbar must be positive");
  if (dx_abs < 0.0) throw Error(ErrorKind::invalid_input, "greens_free_quadrature: dx_abs must be non-negative");
  GreensValue p = free_printed(dx_abs, y, t, hbar);
  if (form == GreensForm::derived) p.value = -I * std::conj(p.value);
  return p;
}

GreensValue greens_free_u_route(double dx_abs, double y, double t, double hb, GreensForm form) {
  if (!(t > 0.0) || !(hb > 0.0)) throw Error(ErrorKind::invalid_input, "greens_free_u_route: t and hbar must be positive");
  const double ay = std::abs(y);
  const double A = dx_abs * dx_abs / (2.0 * hb * hb);
  const cplx rot = std::polar(1.0, -pi / 4.0);
  const double width = std::sqrt(2.0 * t / (hb * hb * hb));
  // u = rot * width * v^2 removes the u^{-1/2} endpoint singularity.
  auto f = [&](double v) -> cplx {
    if (v == 0.0) return 0.0;
    const cplx u = rot * (width * v * v);
    const cplx w = ay + hb * hb * u;
    const cplx ex = -A / u - I * w * w / (2.0 * hb * t);
    if (ex.real() < -745.0) return 0.0;
    return w / std::sqrt(2.0 * pi * hb * hb * u) * std::exp(ex) * rot * (2.0 * width * v);
  };
  const QuadResult r = integrate_to_infinity(f, 0.0, tight());
  const cplx pre = std::sqrt(cplx(0.0, hb)) / std::sqrt(2.0 * pi * t * t * t);
  if (!r.converged) throw Error(ErrorKind::precision_loss, "greens_free_u_route: quadrature did not converge", std::abs(pre) * r.error);
  cplx v = pre * r.value;
  if (form == GreensForm::derived) v = -I * std::conj(v);
  return {v, std::abs(pre) * r.error};
}

double printed_stationary_point(double y, double t, double hbar) { return std::abs(y) / (2.0 * hbar * t); }

double printed_phase_derivative(double xi, double y, double t, double hbar) {
  return 2.0 * hbar * t * xi - std::abs(y);
}

StationaryPhaseResult greens_stationary_phase(double dx_abs, double y, double t, double hbar,
                                              StationaryPhaseForm form) {
  if (!(t > 0.0) || !(hbar > 0.0)) throw Error(ErrorKind::invalid_input, "stationary phase: t and hbar must be positive");
  const double ht = hbar * t;
  if (ht < 10.0) throw Error(ErrorKind::out_of_regime, "stationary phase: hbar t below 10", ht);
  StationaryPhaseResult res;
  res.warning = ht < 100.0;
  const double ay = std::abs(y);
  if (form == StationaryPhaseForm::generic) {
    // Phase hbar t xi^2/2 - xi |y| of the integrated-by-parts xi integrand.
    res.xi0 = ay / ht;
    res.note = "stationary point |y|/(hbar t) of the phase hbar t xi^2/2 - xi|y|";
    if (res.xi0 == 0.0) {
      res.value = 0.0;
      res.note += "; amplitude xi I(A, i hbar^2 xi) vanishes at xi0 = 0";
      return res;
    }
    const cplx A = dx_abs * dx_abs / (2.0 * hbar * hbar);
    const cplx B = I * hbar * hbar * res.xi0;
    const cplx iab = std::sqrt(pi) / std::sqrt(B) * std::exp(-2.0 * std::sqrt(A) * std::sqrt(B));
    res.value = hbar / std::pow(2.0 * pi, 1.5) * std::sqrt(2.0 * pi * I / ht) * res.xi0 * iab *
                std::exp(-I * ay * ay / (2.0 * ht));
    return res;
  }
  res.xi0 = printed_stationary_point(y, t, hbar);
  res.note = "printed asymptotic form with |u| read as |y|";
  if (ay == 0.0 || dx_abs == 0.0) {
    res.defined = false;
    res.value = cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
    res.note += "; singular at |y| = 0 or |x - x'| = 0";
    return res;
  }
  const cplx i14 = std::polar(1.0, pi / 8.0);
  const cplx bracket = -0.25 * I * std::pow(ay / ht, -1.25) + ay - dx_abs * std::sqrt(I * ht / (2.0 * ay));
  const cplx ex = -I * ay * ay / (2.0 * ht) + I * std::sqrt(I * ay / ht) * dx_abs;
  res.value = i14 / (4.0 * pi * t * std::sqrt(2.0 * dx_abs)) * bracket * std::exp(ex);
  return res;
}

}  // namespace combfrac
