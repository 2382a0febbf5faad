#include "combfrac/fraccalc.hpp"

#include <algorithm>
#include <cmath>

#include "combfrac/fft.hpp"
#include "convolution.hpp"

namespace combfrac {

void FracOrder::require_derivative_range() const {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::unsupported_order, "derivative order must lie in (0, 1]", alpha);
}

void SampledFunction::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::invalid_input, "sampled function: step must be positive");
  if (values.size() < 2) throw Error(ErrorKind::invalid_input, "sampled function: need at least two samples");
}

double gamma_ratio(double a, double b) {
  // Gamma(a)/Gamma(b); lgamma keeps large arguments finite.
  if (b <= 0.0 && b == std::floor(b)) return 0.0;
  if (a <= 0.0 && a == std::floor(a)) return std::numeric_limits<double>::infinity();
  if (a < 150.0 && b < 150.0) return std::tgamma(a) / std::tgamma(b);
  int sa = 0, sb = 0;
  const double la = lgamma_r(a, &sa);
  const double lb = lgamma_r(b, &sb);
  return sa * sb * std::exp(la - lb);
}

SampledFunction frac_integral(const SampledFunction& f, FracOrder order) {
  f.validate();
  const double a = order.alpha;
  if (!(a > 0.0)) throw Error(ErrorKind::unsupported_order, "integration order must be positive", a);
  const std::size_t n = f.size();

  // Weights of the piecewise-linear product rule: c_m = (m+1)^{a+1} - 2 m^{a+1} + (m-1)^{a+1}.
  const double scale = std::pow(f.step, a) / std::tgamma(a + 2.0);

  // acc_k = start term + sum_{j=1}^{k} w_{k-j} f_j, w_0 = 1, w_m = c_m.
  std::vector<double> w(n);
  w[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) w[m] = detail::pow_diff2(static_cast<double>(m), a + 1.0);
  std::vector<cplx> g(f.values);
  g[0] = 0.0;
  const auto conv = detail::causal_convolve(w, g);

  SampledFunction out{f.start, f.step, std::vector<cplx>(n, cplx(0.0))};
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    // p_{k-1} - (k - a - 1) k^a, rewritten to avoid cancellation.
    const double start = std::pow(kd, a) * (kd * std::expm1((a + 1.0) * std::log1p(-1.0 / kd)) + a + 1.0);
    out.values[k] = scale * (start * f.values[0] + conv[k]);
  }
  return out;
}

namespace {

std::vector<double> l1_weights(double alpha, std::size_t n) {
  std::vector<double> b(n);
  const double e = 1.0 - alpha;
  for (std::size_t k = 0; k < n; ++k) b[k] = detail::pow_diff1(static_cast<double>(k), e);
  return b;
}

}  // namespace

SampledFunction caputo_deriv(const SampledFunction& f, FracOrder order) {
  f.validate();
  order.require_derivative_range();
  const double a = order.alpha;
  const std::size_t n = f.size();
  const auto b = l1_weights(a, n);
  const double c = std::pow(f.step, -a) / std::tgamma(2.0 - a);

  std::vector<cplx> diff(n, cplx(0.0));
  for (std::size_t j = 1; j < n; ++j) diff[j] = f.values[j] - f.values[j - 1];

  const auto conv = detail::causal_convolve(b, diff);
  SampledFunction out{f.start, f.step, std::vector<cplx>(n, cplx(0.0))};
  for (std::size_t k = 1; k < n; ++k) out.values[k] = c * conv[k];
  return out;
}

RlDerivative rl_deriv(const SampledFunction& f, FracOrder order) {
  f.validate();
  if (!(order.alpha > 0.0 && order.alpha < 1.0))
    throw Error(ErrorKind::unsupported_order, "Riemann-Liouville derivative needs 0 < alpha < 1", order.alpha);
  RlDerivative out{caputo_deriv(f, order), {}};
  const cplx f0 = f.values[0];
  const double g = 1.0 / std::tgamma(1.0 - order.alpha);
  for (std::size_t k = 1; k < f.size(); ++k)
    out.values.values[k] += f0 * g * std::pow(f.x(k) - f.start, -order.alpha);
  if (f0 != cplx(0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    out.values.values[0] = cplx(f0.real() == 0.0 ? 0.0 : std::copysign(inf, f0.real()),
                                f0.imag() == 0.0 ? 0.0 : std::copysign(inf, f0.imag()));
    out.singular.push_back(0);
  }
  return out;
}

double rl_power_law(FracOrder order, double beta, double x) {
  if (!(beta > -1.0)) throw Error(ErrorKind::invalid_input, "power law needs beta > -1", beta);
  if (!(x > 0.0)) throw Error(ErrorKind::invalid_input, "power law needs x > 0", x);
  // 1/Gamma at a non-positive integer is zero (reflection), e.g. beta = alpha - 1.
  return gamma_ratio(beta + 1.0, beta + 1.0 - order.alpha) * std::pow(x, beta - order.alpha);
}

namespace {

// Periodic multiplier (ik)^alpha on `len` points, DC and Nyquist dropped.
std::vector<cplx> weyl_periodic(std::vector<cplx> work, std::size_t len, double step, double alpha) {
  work.resize(len, cplx(0.0));
  FftBatch fft(static_cast<int>(len), 1);
  fft.forward(work.data());
  const auto k = fft_wavenumbers(static_cast<int>(len), step);
  for (std::size_t j = 0; j < len; ++j) {
    if (k[j] == 0.0 || (len % 2 == 0 && j == len / 2)) {
      work[j] = 0.0;
      continue;
    }
    work[j] *= cpow(cplx(0.0, k[j]), alpha) / static_cast<double>(len);
  }
  fft.backward(work.data());
  return work;
}

}  // namespace

SampledFunction weyl_deriv(const SampledFunction& f, FracOrder order, const WeylOptions& opt) {
  f.validate();
  order.require_derivative_range();
  const std::size_t n = f.size();
  std::vector<cplx> work(f.values);
  if (opt.periodic) {
    work = weyl_periodic(std::move(work), n, f.step, order.alpha);
    return SampledFunction{f.start, f.step, std::move(work)};
  }

  const std::size_t band = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(opt.taper_fraction * n)));
  double peak = 0.0;
  for (const auto& v : work) peak = std::max(peak, std::abs(v));
  double edge = 0.0;
  for (std::size_t k = 0; k < band; ++k) edge = std::max(edge, std::abs(work[k]));
  const double leak = peak > 0.0 ? edge / peak : 0.0;
  if (leak > opt.leakage_threshold)
    throw Error(ErrorKind::boundary_leakage, "weyl_deriv: input does not decay at the lower end", leak);
  for (std::size_t k = 0; k < band; ++k) {
    const double w = 0.5 - 0.5 * std::cos(pi * static_cast<double>(k) / static_cast<double>(band));
    work[k] *= w;
    work[n - 1 - k] *= w;
  }

  const std::size_t len = n * static_cast<std::size_t>(std::max(1, opt.pad_factor));
  auto out = weyl_periodic(work, len, f.step, order.alpha);
  out.resize(n);
  if (opt.image_extrapolation) {
    // Periodic images add an almost uniform offset ~ P^{-1-alpha}; two periods
    // remove it.
    auto fine = weyl_periodic(work, 2 * len, f.step, order.alpha);
    const double r = std::pow(2.0, 1.0 + order.alpha);
    for (std::size_t k = 0; k < n; ++k) out[k] = (r * fine[k] - out[k]) / (r - 1.0);
  }
  return SampledFunction{f.start, f.step, std::move(out)};
}

}  // namespace combfrac
