#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "combfrac/fft.hpp"
#include "combfrac/hamiltonians.hpp"
#include "combfrac/transforms.hpp"

namespace combfrac {

// Rows are stored in FFT order: row k sits at y = k*dy for k < ny/2 and at
// (k - ny)*dy otherwise, so row 0 is the axis y = 0. Column-major in y:
// value(ix, iy) = values[ix*ny + iy].
struct CombGrid {
  int nx = 256;
  int ny = 512;
  double dx = 0.1;
  double dy = 0.1;
  double x0 = -12.8;

  double x(int ix) const { return x0 + dx * ix; }
  double y(int iy) const { return dy * (iy < ny / 2 ? iy : iy - ny); }
  double ly() const { return dy * ny; }
  Grid1D x_grid() const { return {x0, dx, nx}; }
  void validate() const;
};

struct CombField {
  CombGrid grid;
  double hbar = 1.0;
  CVector values;

  static CombField zeros(const CombGrid& g, double hbar);
  template <class F>
  static CombField sample(const CombGrid& g, double hbar, F&& f) {
    CombField c = zeros(g, hbar);
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy) c.at(ix, iy) = f(g.x(ix), g.y(iy));
    return c;
  }
  // g(x) times the grid delta 1/dy on the axis row.
  static CombField axis_delta(const CombGrid& g, double hbar, const CVector& gx);

  cplx& at(int ix, int iy) { return values[static_cast<Eigen::Index>(ix) * grid.ny + iy]; }
  const cplx& at(int ix, int iy) const { return values[static_cast<Eigen::Index>(ix) * grid.ny + iy]; }
  double norm() const;  // sqrt(dx dy sum |psi|^2)
};

// exp(-gamma(y) dt) with gamma = gamma_max z^2 over the outer `fraction` of
// each y half-domain, z running 0..1 towards the seam.
struct AbsorbingLayer {
  bool enabled = true;
  double gamma_max = 100.0;
  double fraction = 0.2;
};

// Mass in the rows next to the periodic seam, relative to the initial mass.
struct LeakageMonitor {
  double band_fraction = 0.02;
  double threshold = 1e-6;
};

struct CombOptions {
  AbsorbingLayer layer;
  LeakageMonitor monitor;
};

class CombPropagator {
 public:
  virtual ~CombPropagator() = default;
  virtual void step(CombField& field) = 0;
  virtual double dt() const = 0;
  virtual std::string name() const = 0;
};

// Strang splitting: half y-kinetic (spectral), Crank-Nicolson coupling on the
// axis row with strength H/dy, half y-kinetic, then the absorbing factor.
class StrangSplitPropagator : public CombPropagator {
 public:
  StrangSplitPropagator(const CombGrid& grid, const Hamiltonian& H, double dt, const CombOptions& opt = {});
  void step(CombField& field) override;
  double dt() const override { return dt_; }
  std::string name() const override { return "strang_spectral"; }

 private:
  CombGrid grid_;
  const Hamiltonian* H_;
  double dt_;
  CombOptions opt_;
  FftBatch fft_;
  CVector half_kinetic_;
  Eigen::VectorXd damping_;
  CVector row_, rhs_;
};

// Full 2D Crank-Nicolson with a second-order y stencil, sparse LU.
class CrankNicolson2DPropagator : public CombPropagator {
 public:
  CrankNicolson2DPropagator(const CombGrid& grid, const Hamiltonian& H, double dt, const CombOptions& opt = {});
  ~CrankNicolson2DPropagator() override;
  void step(CombField& field) override;
  double dt() const override { return dt_; }
  std::string name() const override { return "crank_nicolson_2d"; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double dt_;
};

// One Strang step; builds a propagator per call.
CombField comb_step(const CombField& field, const Hamiltonian& H, double dt, const CombOptions& opt = {});

double seam_band_mass(const CombField& field, const LeakageMonitor& monitor);

struct CombRunInfo {
  double initial_norm = 0.0;
  double max_leakage = 0.0;
  bool leakage_flag = false;
  int steps = 0;
};

using CombObserver = std::function<void(int step, double t, const CombField&)>;

// Advances n_steps, calling `observe` at step 0 and every save_stride steps.
CombRunInfo comb_run(CombField& field, CombPropagator& prop, int n_steps, int save_stride,
                     const CombObserver& observe, const LeakageMonitor& monitor = {});

struct CombTrajectory {
  std::vector<double> times;
  std::vector<CombField> snapshots;
  CombRunInfo info;
};

CombTrajectory comb_solve(const CombField& psi0, const Hamiltonian& H, double dt, int n_steps, int save_stride,
                          const CombOptions& opt = {});

CVector axis_slice(const CombField& field);

struct ModeTrajectory {
  double mode_l = 0.0;
  std::vector<double> times;
  std::vector<CVector> fields;
};

// Nearest lattice index for l; throws invalid-input when l is off-lattice.
int lattice_index(const CombGrid& grid, double mode_l);
double lattice_mode(const CombGrid& grid, int index);

// Psi_l(x) for one lattice mode by direct summation.
CVector mode_of(const CombField& field, int index);

ModeTrajectory mode_trajectory(const std::vector<CombField>& traj, const std::vector<double>& times, double mode_l);

enum class ResidualForm { exact_laplace, ftse_l0, comb_ftse_printed, comb_ftse_derived };

struct ResidualBranch {
  std::string label;
  std::vector<double> abscissa;  // sample index (Laplace) or time
  std::vector<double> relative;
  double max_relative = 0.0;
};

struct ResidualReport {
  ResidualForm form = ResidualForm::exact_laplace;
  double mode_l = 0.0;
  std::vector<cplx> s_samples;
  std::vector<ResidualBranch> branches;

  const ResidualBranch& branch(const std::string& label) const;
};

struct ResidualOptions {
  std::vector<cplx> s_samples;  // exact_laplace
  double ly = 0.0;              // y period, needed for the lattice kernel
  int ny = 0;
  double skip_time = 0.0;       // time-domain forms skip t < skip_time
};

// Mode-equation residuals on simulated data; see ResidualForm.
ResidualReport mode_equation_residual(const ModeTrajectory& traj, const Hamiltonian& H, double hbar,
                                      const std::vector<CVector>& axis, ResidualForm form,
                                      const ResidualOptions& opt);

// Laplace s-samples with T*Re(s) >= 20 spread over frequency.
std::vector<cplx> default_s_samples(double T, int count = 8);

// Delta potential on a line: i hbar psi_t = lambda delta(y) psi - (hbar^2/2) psi_yy,
// grid delta coupling, spectral kinetics, Strang splitting.
struct DeltaLineConfig {
  double lambda = 1.0;
  double hbar = 1.0;
  double dy = 0.025;
  double ly = 51.2;
  double dt_factor = 0.5;  // dt = dt_factor * dy^2 / hbar
  double source_width = 0.0;  // 0: grid delta; otherwise Gaussian sigma
  AbsorbingLayer layer{true, 1000.0, 0.2};
};

struct DeltaLineResult {
  std::vector<double> times;
  std::vector<std::vector<cplx>> values;  // per time, per requested y
};

DeltaLineResult delta_line_evolve(const DeltaLineConfig& cfg, const std::vector<double>& ys,
                                  const std::vector<double>& times);

// Three-level Richardson extrapolation over dy, dy/2, dy/4 with source width
// 2*dy at each level.
DeltaLineResult delta_line_extrapolated(DeltaLineConfig cfg, const std::vector<double>& ys,
                                        const std::vector<double>& times);

}  // namespace combfrac
