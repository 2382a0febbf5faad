#include <cmath>

#include "combfrac/comb.hpp"
#include "convolution.hpp"

namespace combfrac {

namespace {

double uniform_step(const std::vector<double>& times) {
  if (times.size() < 3) throw Error(ErrorKind::invalid_input, "mode residual: need at least three samples");
  const double dt = times[1] - times[0];
  for (std::size_t k = 1; k < times.size(); ++k)
    if (std::abs(times[k] - times[k - 1] - dt) > 1e-9 * dt)
      throw Error(ErrorKind::invalid_input, "mode residual: times must be uniform");
  return dt;
}

// Applies a scalar causal convolution to every component of a vector series.
std::vector<CVector> convolve_series(const std::vector<double>& w, const std::vector<CVector>& u) {
  const std::size_t n = u.size();
  const Eigen::Index dim = u[0].size();
  std::vector<CVector> out(n, CVector::Zero(dim));
  std::vector<cplx> col(n);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < n; ++k) col[k] = u[k][i];
    const auto c = detail::causal_convolve(w, col);
    for (std::size_t k = 0; k < n; ++k) out[k][i] = c[k];
  }
  return out;
}

// L1 Caputo derivative of a vector-valued series.
std::vector<CVector> caputo_series(const std::vector<CVector>& u, double dt, double alpha) {
  const std::size_t n = u.size();
  std::vector<double> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = detail::pow_diff1(static_cast<double>(k), 1.0 - alpha);
  std::vector<CVector> diff(n, CVector::Zero(u[0].size()));
  for (std::size_t k = 1; k < n; ++k) diff[k] = u[k] - u[k - 1];
  auto out = convolve_series(b, diff);
  const double c = std::pow(dt, -alpha) / std::tgamma(2.0 - alpha);
  out[0].setZero();
  for (std::size_t k = 1; k < n; ++k) out[k] *= c;
  return out;
}

// Product-integration fractional integral of a vector-valued series.
std::vector<CVector> integral_series(const std::vector<CVector>& f, double dt, double a) {
  const std::size_t n = f.size();
  std::vector<double> w(n);
  w[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) w[m] = detail::pow_diff2(static_cast<double>(m), a + 1.0);
  std::vector<CVector> g(f);
  g[0].setZero();
  auto out = convolve_series(w, g);
  const double scale = std::pow(dt, a) / std::tgamma(a + 2.0);
  out[0].setZero();
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double start = std::pow(kd, a) * (kd * std::expm1((a + 1.0) * std::log1p(-1.0 / kd)) + a + 1.0);
    out[k] = scale * (start * f[0] + out[k]);
  }
  return out;
}

void finish(ResidualBranch& b) {
  b.max_relative = 0.0;
  for (double v : b.relative) b.max_relative = std::max(b.max_relative, v);
}

ResidualReport exact_laplace(const ModeTrajectory& traj, const Hamiltonian& H, double hbar,
                             const std::vector<CVector>& axis, const ResidualOptions& opt) {
  const double dt = uniform_step(traj.times);
  const double T = traj.times.back() - traj.times.front();
  if (opt.s_samples.empty()) throw Error(ErrorKind::invalid_input, "exact_laplace: no s samples");
  for (const auto& s : opt.s_samples)
    if (!(s.real() > 0.0) || T * s.real() < 20.0)
      throw Error(ErrorKind::invalid_input, "exact_laplace: time series too short for the Laplace window", T * s.real());
  if (axis.size() != traj.fields.size()) throw Error(ErrorKind::invalid_input, "exact_laplace: axis and mode series differ in length");

  const double l = traj.mode_l;
  const bool lattice = opt.ly > 0.0 && opt.ny > 0;
  ResidualReport rep;
  rep.form = ResidualForm::exact_laplace;
  rep.mode_l = l;
  rep.s_samples = opt.s_samples;
  std::vector<std::string> labels = {"axis_direct", "derived_continuum", "paper_continuum"};
  if (lattice) {
    labels.push_back("derived_lattice");
    labels.push_back("paper_lattice");
  }
  for (const auto& lab : labels) rep.branches.push_back({lab, {}, {}, 0.0});

  const Eigen::Index nx = traj.fields.front().size();
  for (std::size_t m = 0; m < opt.s_samples.size(); ++m) {
    const cplx s = opt.s_samples[m];
    const auto pv = laplace_forward_columns(traj.fields, traj.times.front(), dt, s);
    const auto av = laplace_forward_columns(axis, traj.times.front(), dt, s);
    const CVector P = Eigen::Map<const CVector>(pv.data(), nx);
    const CVector A = Eigen::Map<const CVector>(av.data(), nx);
    const CVector base = I * hbar * (s * P - traj.fields.front()) - 0.5 * hbar * hbar * l * l * P;
    const double scale = std::max((I * hbar * s * P).norm(), 1e-300);
    const CVector HP = H.apply(P);

    auto push = [&](const std::string& lab, const CVector& r) {
      for (auto& b : rep.branches)
        if (b.label == lab) {
          b.abscissa.push_back(static_cast<double>(m));
          b.relative.push_back(r.norm() / scale);
        }
    };
    push("axis_direct", base - H.apply(A));
    const cplx kd = 1.0 / kernel_fourier(s, l, hbar, SignConvention::derived);
    const cplx kp = 1.0 / kernel_fourier(s, l, hbar, SignConvention::paper);
    push("derived_continuum", base - kd * HP);
    push("paper_continuum", base - kp * HP);
    if (lattice) {
      auto g = [&](double q) { return 1.0 / (q * q - 2.0 * I * s / hbar); };
      cplx mean = 0.0;
      for (int j = -opt.ny / 2; j < opt.ny / 2; ++j) mean += g(2.0 * pi * j / opt.ly);
      mean /= opt.ly;
      const cplx klat = mean / g(l);
      push("derived_lattice", base - klat * HP);
      push("paper_lattice", base + klat * HP);
    }
  }
  for (auto& b : rep.branches) finish(b);
  return rep;
}

ResidualReport time_domain(const ModeTrajectory& traj, const Hamiltonian& H, double hbar, ResidualForm form,
                           const ResidualOptions& opt) {
  const double dt = uniform_step(traj.times);
  const double l = traj.mode_l;
  const auto& u = traj.fields;
  const auto D = caputo_series(u, dt, 0.5);
  const cplx pre = cpow(cplx(0.0, hbar), 0.5);
  std::vector<CVector> Hu;
  Hu.reserve(u.size());
  for (const auto& v : u) Hu.push_back(H.apply(v));
  const double c = 1.0 / (std::sqrt(2.0) * hbar);

  ResidualReport rep;
  rep.form = form;
  rep.mode_l = l;
  std::vector<CVector> intH, halfU;
  if (form == ResidualForm::comb_ftse_printed || form == ResidualForm::comb_ftse_derived) {
    intH = integral_series(Hu, dt, 1.0);
    if (form == ResidualForm::comb_ftse_derived) halfU = integral_series(u, dt, 0.5);
  }
  std::vector<std::string> labels;
  if (form == ResidualForm::ftse_l0) labels = {"plus_i", "minus_i"};
  else labels = {form == ResidualForm::comb_ftse_printed ? "printed" : "derived"};
  for (const auto& lab : labels) rep.branches.push_back({lab, {}, {}, 0.0});

  const double l2 = l * l;
  for (std::size_t k = 1; k < u.size(); ++k) {
    const double t = traj.times[k];
    if (t < opt.skip_time) continue;
    const CVector lhs = pre * D[k];
    const double scale = std::max(lhs.norm(), 1e-300);
    if (form == ResidualForm::ftse_l0) {
      const CVector r_plus = lhs - I * c * Hu[k];
      const CVector r_minus = lhs + I * c * Hu[k];
      rep.branches[0].abscissa.push_back(t);
      rep.branches[0].relative.push_back(r_plus.norm() / scale);
      rep.branches[1].abscissa.push_back(t);
      rep.branches[1].relative.push_back(r_minus.norm() / scale);
    } else if (form == ResidualForm::comb_ftse_printed) {
      const CVector rhs = -(l2 / (2.0 * std::sqrt(2.0))) * intH[k] + I * c * Hu[k] + 0.5 * hbar * hbar * l2 * u[k];
      rep.branches[0].abscissa.push_back(t);
      rep.branches[0].relative.push_back((lhs - rhs).norm() / scale);
    } else {
      const CVector rhs = (l2 / (2.0 * std::sqrt(2.0))) * intH[k] - I * c * Hu[k] +
                          (0.5 * hbar * hbar * l2 / pre) * halfU[k];
      rep.branches[0].abscissa.push_back(t);
      rep.branches[0].relative.push_back((lhs - rhs).norm() / scale);
    }
  }
  for (auto& b : rep.branches) finish(b);
  return rep;
}

}  // namespace

std::vector<cplx> default_s_samples(double T, int count) {
  if (!(T > 0.0) || count < 1) throw Error(ErrorKind::invalid_input, "default_s_samples: bad window");
  std::vector<cplx> s;
  const double sigma = 30.0 / T;
  for (int k = 0; k < count; ++k) {
    const double w = (k - (count - 1) / 2.0) * 10.0 / T;
    s.emplace_back(sigma + (k % 2 == 0 ? 0.0 : 0.25 * sigma), w);
  }
  return s;
}

ResidualReport mode_equation_residual(const ModeTrajectory& traj, const Hamiltonian& H, double hbar,
                                      const std::vector<CVector>& axis, ResidualForm form,
                                      const ResidualOptions& opt) {
  if (traj.fields.size() != traj.times.size())
    throw Error(ErrorKind::invalid_input, "mode residual: trajectory times and fields differ in length");
  if (form == ResidualForm::exact_laplace) return exact_laplace(traj, H, hbar, axis, opt);
  return time_domain(traj, H, hbar, form, opt);
}

}  // namespace combfrac
