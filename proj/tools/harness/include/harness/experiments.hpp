#pragma once

#include <vector>

#include <combfrac/comb.hpp>
#include <combfrac/ftse.hpp>

#include "harness/manifest.hpp"

namespace harness {

RunManifest run_identities(const RunConfig& cfg);
RunManifest run_equivalence(const RunConfig& cfg);
RunManifest run_greens_compare(const RunConfig& cfg);
RunManifest run_convergence(const RunConfig& cfg);
RunManifest run_experiment(const RunConfig& cfg);

// E_alpha(z) for real z by the 100-digit power series.
double ml_series_oracle(double alpha, double z);

combfrac::HamiltonianSpec hamiltonian_spec(const RunConfig& cfg);
combfrac::CombGrid comb_grid(const RunConfig& cfg);
combfrac::CVector axis_profile(const RunConfig& cfg, const combfrac::CombGrid& grid);

// Comb run against FTSE(1/2) with both signs of H_eff = +-i H/(sqrt2 hbar).
struct EquivalenceStudy {
  std::vector<double> times;
  std::vector<double> err_minus;      // H_eff = -i H/(sqrt2 hbar)
  std::vector<double> err_plus;       // H_eff = +i H/(sqrt2 hbar)
  std::vector<double> outside_l0;     // norm fraction outside l = 0
  std::vector<double> total_norm;
  std::vector<double> l0_norm;        // sqrt(dx) * ||Psi_0||
  double final_minus = 0.0;
  double final_plus = 0.0;
  double max_leakage = 0.0;
};

// Throws combfrac::Error(boundary_leakage) when the seam monitor trips.
EquivalenceStudy equivalence_study(const RunConfig& cfg);

// Halves dx, dy and dt at fixed domain and final time.
RunConfig refined(const RunConfig& cfg);

struct ResidualStudy {
  std::vector<combfrac::ResidualReport> laplace;      // per tracked mode
  std::vector<combfrac::ResidualReport> time_domain;  // ftse_l0, printed, derived per mode
  double run_seconds = 0.0;
};

ResidualStudy residual_study(const RunConfig& cfg);

// Delta-line simulation against the closed form over the (lambda, y, t) grid.
struct SimulationComparison {
  struct Row {
    double lambda, y, t;
    combfrac::cplx simulated, exact;
    double relative;
  };
  std::vector<Row> rows;
  double max_relative = 0.0;
};

SimulationComparison greens_simulation(const RunConfig& cfg);

}  // namespace harness
