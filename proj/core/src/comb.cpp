#include "combfrac/comb.hpp"

#include <cmath>

namespace combfrac {

void CombGrid::validate() const {
  if (nx < 32 || ny < 32) throw Error(ErrorKind::invalid_input, "comb grid must be at least 32 x 32");
  if (ny % 2 != 0) throw Error(ErrorKind::invalid_input, "comb grid: ny must be even", ny);
  if (!(dx > 0.0) || !(dy > 0.0)) throw Error(ErrorKind::invalid_input, "comb grid: spacings must be positive");
}

CombField CombField::zeros(const CombGrid& g, double hbar) {
  g.validate();
  CombField c;
  c.grid = g;
  c.hbar = hbar;
  c.values = CVector::Zero(static_cast<Eigen::Index>(g.nx) * g.ny);
  return c;
}

CombField CombField::axis_delta(const CombGrid& g, double hbar, const CVector& gx) {
  if (gx.size() != g.nx) throw Error(ErrorKind::invalid_input, "axis_delta: profile size mismatch");
  CombField c = zeros(g, hbar);
  for (int ix = 0; ix < g.nx; ++ix) c.at(ix, 0) = gx[ix] / g.dy;
  return c;
}

double CombField::norm() const { return std::sqrt(grid.dx * grid.dy) * values.norm(); }

namespace {

Eigen::VectorXd damping_profile(const CombGrid& g, const AbsorbingLayer& layer, double dt) {
  Eigen::VectorXd d = Eigen::VectorXd::Ones(g.ny);
  if (!layer.enabled) return d;
  const double half = 0.5 * g.ly();
  const double edge = half * (1.0 - layer.fraction);
  for (int iy = 0; iy < g.ny; ++iy) {
    const double ay = std::abs(g.y(iy));
    if (ay <= edge) continue;
    const double z = std::min(1.0, (ay - edge) / (half - edge));
    d[iy] = std::exp(-layer.gamma_max * z * z * dt);
  }
  return d;
}

}  // namespace

StrangSplitPropagator::StrangSplitPropagator(const CombGrid& grid, const Hamiltonian& H, double dt,
                                             const CombOptions& opt)
    : grid_(grid), H_(&H), dt_(dt), opt_(opt), fft_(grid.ny, grid.nx) {
  grid_.validate();
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "comb: dt must be positive", dt);
  if (H.size() != grid.nx) throw Error(ErrorKind::invalid_input, "comb: Hamiltonian size does not match nx");
  const double hbar = H.hbar();
  const auto l = fft_wavenumbers(grid.ny, grid.dy);
  half_kinetic_.resize(grid.ny);
  for (int j = 0; j < grid.ny; ++j)
    half_kinetic_[j] = std::exp(-I * (0.25 * hbar * l[j] * l[j] * dt)) / static_cast<double>(grid.ny);
  damping_ = damping_profile(grid_, opt.layer, dt);
  row_.resize(grid.nx);
  rhs_.resize(grid.nx);
}

void StrangSplitPropagator::step(CombField& field) {
  const int nx = grid_.nx, ny = grid_.ny;
  cplx* data = field.values.data();
  auto kinetic = [&] {
    fft_.forward(data);
    for (int ix = 0; ix < nx; ++ix) {
      cplx* col = data + static_cast<std::size_t>(ix) * ny;
      for (int j = 0; j < ny; ++j) col[j] *= half_kinetic_[j];
    }
    fft_.backward(data);
  };
  kinetic();
  // i hbar psi_t = (H/dy) psi on the axis row, Crank-Nicolson.
  const double hbar = H_->hbar();
  const cplx b = I * dt_ / (2.0 * hbar * grid_.dy);
  for (int ix = 0; ix < nx; ++ix) row_[ix] = data[static_cast<std::size_t>(ix) * ny];
  H_->apply_into(row_.data(), rhs_.data());
  rhs_ = row_ - b * rhs_;
  row_ = H_->solve_shifted(1.0, b, rhs_);
  for (int ix = 0; ix < nx; ++ix) data[static_cast<std::size_t>(ix) * ny] = row_[ix];
  kinetic();
  if (opt_.layer.enabled) {
    for (int ix = 0; ix < nx; ++ix) {
      cplx* col = data + static_cast<std::size_t>(ix) * ny;
      for (int j = 0; j < ny; ++j) col[j] *= damping_[j];
    }
  }
}

CombField comb_step(const CombField& field, const Hamiltonian& H, double dt, const CombOptions& opt) {
  StrangSplitPropagator prop(field.grid, H, dt, opt);
  CombField out = field;
  prop.step(out);
  return out;
}

double seam_band_mass(const CombField& field, const LeakageMonitor& monitor) {
  const auto& g = field.grid;
  const int band = std::max(1, static_cast<int>(std::lround(monitor.band_fraction * g.ny / 2.0)));
  double m = 0.0;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int k = g.ny / 2 - band; k < g.ny / 2 + band; ++k) m += std::norm(field.at(ix, k));
  return m * g.dx * g.dy;
}

CombRunInfo comb_run(CombField& field, CombPropagator& prop, int n_steps, int save_stride,
                     const CombObserver& observe, const LeakageMonitor& monitor) {
  if (n_steps < 0 || save_stride < 1) throw Error(ErrorKind::invalid_input, "comb_run: bad step counts");
  CombRunInfo info;
  info.initial_norm = field.norm();
  const double mass0 = info.initial_norm * info.initial_norm;
  auto check = [&] {
    if (mass0 == 0.0) return;
    const double leak = seam_band_mass(field, monitor) / mass0;
    info.max_leakage = std::max(info.max_leakage, leak);
    if (leak > monitor.threshold) info.leakage_flag = true;
  };
  if (observe) observe(0, 0.0, field);
  for (int n = 1; n <= n_steps; ++n) {
    prop.step(field);
    if (n % save_stride == 0 || n == n_steps) {
      check();
      if (observe && n % save_stride == 0) observe(n, n * prop.dt(), field);
    }
  }
  info.steps = n_steps;
  return info;
}

CombTrajectory comb_solve(const CombField& psi0, const Hamiltonian& H, double dt, int n_steps, int save_stride,
                          const CombOptions& opt) {
  if (n_steps < 1) throw Error(ErrorKind::invalid_input, "comb_solve: n_steps must be at least 1", n_steps);
  StrangSplitPropagator prop(psi0.grid, H, dt, opt);
  CombField field = psi0;
  CombTrajectory traj;
  traj.info = comb_run(
      field, prop, n_steps, save_stride,
      [&](int, double t, const CombField& f) {
        traj.times.push_back(t);
        traj.snapshots.push_back(f);
      },
      opt.monitor);
  return traj;
}

CVector axis_slice(const CombField& field) {
  CVector row(field.grid.nx);
  for (int ix = 0; ix < field.grid.nx; ++ix) row[ix] = field.at(ix, 0);
  return row;
}

int lattice_index(const CombGrid& grid, double mode_l) {
  const double q = mode_l * grid.ly() / (2.0 * pi);
  const long j = std::lround(q);
  if (std::abs(q - static_cast<double>(j)) > 1e-9 * std::max(1.0, std::abs(q)))
    throw Error(ErrorKind::invalid_input, "mode l is not on the y lattice", mode_l);
  if (j < -grid.ny / 2 || j >= grid.ny / 2) throw Error(ErrorKind::invalid_input, "mode l beyond the y Nyquist", mode_l);
  return static_cast<int>(j);
}

double lattice_mode(const CombGrid& grid, int index) { return 2.0 * pi * index / grid.ly(); }

CVector mode_of(const CombField& field, int index) {
  const auto& g = field.grid;
  CVector out = CVector::Zero(g.nx);
  if (index == 0) {
    for (int ix = 0; ix < g.nx; ++ix) out[ix] = g.dy * field.values.segment(static_cast<Eigen::Index>(ix) * g.ny, g.ny).sum();
    return out;
  }
  CVector phase(g.ny);
  for (int iy = 0; iy < g.ny; ++iy) phase[iy] = std::polar(g.dy, -2.0 * pi * index * iy / static_cast<double>(g.ny));
  for (int ix = 0; ix < g.nx; ++ix)
    out[ix] = field.values.segment(static_cast<Eigen::Index>(ix) * g.ny, g.ny).cwiseProduct(phase).sum();
  return out;
}

ModeTrajectory mode_trajectory(const std::vector<CombField>& traj, const std::vector<double>& times, double mode_l) {
  if (traj.size() != times.size()) throw Error(ErrorKind::invalid_input, "mode_trajectory: times do not match snapshots");
  ModeTrajectory m;
  m.mode_l = mode_l;
  m.times = times;
  if (traj.empty()) return m;
  const int idx = lattice_index(traj.front().grid, mode_l);
  for (const auto& f : traj) m.fields.push_back(mode_of(f, idx));
  return m;
}

const ResidualBranch& ResidualReport::branch(const std::string& label) const {
  for (const auto& b : branches)
    if (b.label == label) return b;
  throw Error(ErrorKind::invalid_input, "residual report has no branch " + label);
}

}  // namespace combfrac
