#include "combfrac/transforms.hpp"

#include <cmath>

#include "combfrac/comb.hpp"

namespace combfrac {

void BromwichContour::validate() const {
  if (!(sigma > 0.0)) throw Error(ErrorKind::invalid_input, "contour: sigma must be positive", sigma);
  if (!(omega_max > 0.0)) throw Error(ErrorKind::invalid_input, "contour: omega_max must be positive", omega_max);
  if (n_samples < 64 || n_samples % 2 != 0)
    throw Error(ErrorKind::invalid_input, "contour: n_samples must be even and at least 64", n_samples);
}

BromwichContour BromwichContour::for_time(double t, int n_samples) {
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_input, "contour: t must be positive", t);
  const double h = pi / (6.0 * t);
  return {2.0 / t, h * n_samples, n_samples};
}

namespace {

// Exact weights for e^{-s tau} against the two hat halves on [0, h]:
// w0 = int e^{-s tau}, w1 = int (tau/h) e^{-s tau}.
void filon_weights(cplx s, double h, cplx& w0, cplx& w1) {
  const cplx x = s * h;
  if (std::abs(x) < 1e-3) {
    w0 = h * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0);
    w1 = h * (0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0);
  } else {
    const cplx e = std::exp(-x);
    w0 = h * (1.0 - e) / x;
    w1 = h * (1.0 - e * (1.0 + x)) / (x * x);
  }
}

}  // namespace

LaplaceResult laplace_forward(const SampledFunction& f, cplx s, const LaplaceOptions& opt) {
  f.validate();
  if (!(s.real() > 0.0)) throw Error(ErrorKind::invalid_input, "laplace_forward: Re(s) must be positive", s.real());
  if (f.start < 0.0) throw Error(ErrorKind::invalid_input, "laplace_forward: window must start at t >= 0");
  const double T = f.end();
  if (T * s.real() < 20.0 && !opt.allow_short_window)
    throw Error(ErrorKind::invalid_input, "laplace_forward: T*Re(s) < 20 without window acknowledgment",
                T * s.real());
  cplx w0, w1;
  filon_weights(s, f.step, w0, w1);
  const cplx step_factor = std::exp(-s * f.step);
  cplx phase = std::exp(-s * f.start);
  cplx acc = 0.0;
  for (std::size_t j = 0; j + 1 < f.size(); ++j) {
    acc += phase * (f.values[j] * (w0 - w1) + f.values[j + 1] * w1);
    phase *= step_factor;
  }
  LaplaceResult r;
  r.value = acc;
  r.truncation_estimate = std::abs(f.values.back()) * std::exp(-s.real() * T) / s.real();
  r.warning = r.truncation_estimate > opt.tolerance;
  return r;
}

std::vector<cplx> laplace_forward_columns(const std::vector<CVector>& series, double t0, double dt, cplx s) {
  if (series.size() < 2) throw Error(ErrorKind::invalid_input, "laplace_forward: series too short");
  const Eigen::Index n = series.front().size();
  cplx w0, w1;
  filon_weights(s, dt, w0, w1);
  const cplx step_factor = std::exp(-s * dt);
  cplx phase = std::exp(-s * t0);
  CVector acc = CVector::Zero(n);
  for (std::size_t j = 0; j + 1 < series.size(); ++j) {
    acc += phase * ((w0 - w1) * series[j] + w1 * series[j + 1]);
    phase *= step_factor;
  }
  return std::vector<cplx>(acc.data(), acc.data() + n);
}

cplx wynn_epsilon(const std::vector<cplx>& partial_sums) {
  if (partial_sums.empty()) return 0.0;
  std::vector<cplx> prev(partial_sums.size() + 1, cplx(0.0));
  std::vector<cplx> cur(partial_sums);
  cplx best = cur.back();
  for (int k = 1; cur.size() > 1; ++k) {
    std::vector<cplx> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const cplx d = cur[i + 1] - cur[i];
      // A vanishing difference means the column has converged; stop before
      // the reciprocal blows up.
      if (std::abs(d) <= 1e-15 * std::max(std::abs(cur[i + 1]), 1e-300)) return best;
      next[i] = prev[i + 1] + 1.0 / d;
    }
    if (k % 2 == 0) {
      const cplx cand = next.back();
      if (!std::isfinite(cand.real()) || !std::isfinite(cand.imag())) return best;
      best = cand;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

cplx bromwich_sum(const LaplaceImage& F, double t, const BromwichContour& contour) {
  contour.validate();
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_input, "bromwich_invert: t must be positive", t);
  const double h = contour.spacing();
  const double sigma = contour.sigma;
  const int n = contour.n_samples;
  // Half-period of the implied Fourier series is pi/h.
  const double half_period = pi / h;
  const cplx z = std::polar(1.0, h * t);
  const cplx a0 = F(cplx(sigma, 0.0));
  std::vector<cplx> sp(n + 1), sm(n + 1);
  sp[0] = 0.5 * a0;
  sm[0] = 0.5 * a0;
  cplx zp = 1.0;
  for (int k = 1; k <= n; ++k) {
    zp *= z;
    sp[k] = sp[k - 1] + F(cplx(sigma, h * k)) * zp;
    sm[k] = sm[k - 1] + F(cplx(sigma, -h * k)) * std::conj(zp);
  }
  return std::exp(sigma * t) / (2.0 * half_period) * (wynn_epsilon(sp) + wynn_epsilon(sm));
}

InversionResult bromwich_invert(const LaplaceImage& F, double t, const BromwichContour& contour,
                                const BromwichOptions& opt) {
  BromwichContour c = contour;
  cplx prev = bromwich_sum(F, t, c);
  double last_err = std::numeric_limits<double>::infinity();
  int failures = 0;
  while (2 * c.n_samples <= opt.max_samples) {
    c.omega_max *= 2.0;
    c.n_samples *= 2;
    const cplx cur = bromwich_sum(F, t, c);
    const double err = std::abs(cur - prev);
    if (err <= opt.tolerance * std::max(1.0, std::abs(cur))) return {cur, err, c.n_samples};
    last_err = err;
    prev = cur;
    if (++failures >= 2) break;
  }
  throw Error(ErrorKind::precision_loss, "bromwich_invert: no convergence across refinements", last_err);
}

std::vector<ModeField> fourier_modes_y(const CombField& field) {
  const auto& g = field.grid;
  std::vector<cplx> work(field.values.data(), field.values.data() + field.values.size());
  FftBatch fft(g.ny, g.nx);
  fft.forward(work.data());
  std::vector<ModeField> modes(g.ny);
  for (int j = 0; j < g.ny; ++j) {
    const int idx = j < (g.ny + 1) / 2 ? j : j - g.ny;
    modes[j].index = idx;
    modes[j].mode_l = 2.0 * pi * idx / g.ly();
    modes[j].values.resize(g.nx);
    for (int ix = 0; ix < g.nx; ++ix) modes[j].values[ix] = g.dy * work[static_cast<std::size_t>(ix) * g.ny + j];
  }
  return modes;
}

cplx kernel_fourier(cplx s, double l, double hbar, SignConvention sign) {
  const cplx r = std::sqrt(s / hbar);
  if (!(r.real() > 0.0)) throw Error(ErrorKind::invalid_input, "kernel_fourier: Re sqrt(s/hbar) must be positive");
  const cplx den = l * l - 2.0 * I * s / hbar;
  if (sign == SignConvention::derived) return 2.0 * (1.0 - I) * r / den;
  return 2.0 * I * (1.0 + I) * r / den;
}

}  // namespace combfrac
