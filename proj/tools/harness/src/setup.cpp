#include <chrono>
#include <cmath>

#include <combfrac/hamiltonians.hpp>

#include "harness/experiments.hpp"

namespace harness {

using namespace combfrac;

HamiltonianSpec hamiltonian_spec(const RunConfig& cfg) {
  HamiltonianSpec spec;
  spec.hbar = cfg.hbar;
  spec.omega = cfg.omega;
  spec.boundary = cfg.boundary == "dirichlet" ? Boundary::dirichlet : Boundary::periodic;
  spec.x_grid = {-0.5 * cfg.nx * cfg.dx, cfg.dx, cfg.nx};
  if (cfg.hamiltonian == "harmonic") {
    spec.kind = PotentialKind::harmonic;
  } else if (cfg.hamiltonian == "tabulated") {
    spec.kind = PotentialKind::tabulated;
    spec.potential = load_potential_csv(cfg.potential_file);
    if (static_cast<int>(spec.potential.size()) != cfg.nx || std::abs(spec.potential.step - cfg.dx) > 1e-9 * cfg.dx)
      throw ConfigError("potential_file grid (" + std::to_string(spec.potential.size()) + " points, step " +
                        num(spec.potential.step) + ") does not match nx and dx");
    spec.x_grid.start = spec.potential.start;
  }
  spec.validate();
  return spec;
}

CombGrid comb_grid(const RunConfig& cfg) {
  CombGrid g;
  g.nx = cfg.nx;
  g.ny = cfg.ny;
  g.dx = cfg.dx;
  g.dy = cfg.dy;
  g.x0 = hamiltonian_spec(cfg).x_grid.start;
  g.validate();
  return g;
}

CVector axis_profile(const RunConfig& cfg, const CombGrid& grid) {
  CVector g = CVector::Zero(grid.nx);
  if (cfg.initial == "zero") return g;
  const double s2 = cfg.packet_sigma * cfg.packet_sigma;
  for (int i = 0; i < grid.nx; ++i) {
    const double u = grid.x(i) - cfg.packet_center;
    g[i] = std::exp(-u * u / (2.0 * s2) + I * cfg.packet_k0 * u);
  }
  return g;
}

RunConfig refined(const RunConfig& cfg) {
  RunConfig r = cfg;
  r.nx *= 2;
  r.ny *= 2;
  r.dx *= 0.5;
  r.dy *= 0.5;
  r.dt *= 0.5;
  r.n_steps *= 2;
  r.save_stride *= 2;
  return r;
}

RunManifest run_experiment(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunManifest m = [&] {
    switch (cfg.experiment) {
      case Experiment::identities: return run_identities(cfg);
      case Experiment::equivalence: return run_equivalence(cfg);
      case Experiment::greens_compare: return run_greens_compare(cfg);
      case Experiment::convergence: return run_convergence(cfg);
    }
    throw ConfigError("unknown experiment");
  }();
  m.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return m;
}

}  // namespace harness
