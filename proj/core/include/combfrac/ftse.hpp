#pragma once

#include <vector>

#include "combfrac/hamiltonians.hpp"

namespace combfrac {

struct FtseOptions {
  // Lubich-type correction making the scheme exact on t^(k alpha), k alpha < 1,
  // for solutions u0 + c1 t^alpha + c2 t^(2 alpha) + ... The first q steps
  // are then coupled and solved as one block system.
  bool starting_correction = true;
  int max_correction_terms = 6;
};

struct FtseState {
  CVector psi;
  std::vector<CVector> history;  // increments psi_{j+1} - psi_j
  FracOrder alpha{0.5};
  int step_index = 0;
  double dt = 1e-3;

  static FtseState initial(const CVector& psi0, FracOrder alpha, double dt);
};

// Implicit L1 stepper for (i hbar)^alpha D_C^alpha psi = H_eff psi.
// For alpha < 1 the right side is taken at t_{n+1}; at alpha = 1 it is the
// Crank-Nicolson average, so the scheme reduces to the standard CN propagator.
class FtseStepper {
 public:
  FtseStepper(ScaledHamiltonian h_eff, FracOrder alpha, double dt, double hbar, const FtseOptions& opt = {});
  void step(FtseState& state);
  double theta() const { return theta_; }

 private:
  double weight(std::size_t k) const { return b_[k]; }
  const std::vector<double>& correction(int n);
  void solve_start(const CVector& u0);

  ScaledHamiltonian h_;
  double alpha_, dt_, hbar_, theta_;
  FtseOptions opt_;
  cplx kappa_;  // (i hbar)^alpha dt^-alpha / Gamma(2 - alpha)
  std::vector<double> b_;
  std::vector<double> sigma_;
  std::vector<std::vector<double>> w_;
  std::vector<CVector> start_;  // u_1..u_q
};

void ftse_step(FtseState& state, const ScaledHamiltonian& h_eff, double hbar, const FtseOptions& opt = {});

struct FtseTrajectory {
  std::vector<double> times;
  std::vector<CVector> states;
};

FtseTrajectory ftse_solve(const CVector& psi0, const ScaledHamiltonian& h_eff, FracOrder alpha, double dt,
                          int n_steps, double hbar, int save_stride = 1, const FtseOptions& opt = {});

// Sum_k c_k E_alpha(lambda_eff t^alpha) psi_k, lambda_eff = scaling lambda/(i hbar)^alpha.
CVector ftse_spectral_solution(const std::vector<EigenPair>& pairs, const std::vector<cplx>& coeffs, FracOrder alpha,
                               double hbar, double t, cplx hamiltonian_scaling);

cplx effective_eigenvalue(double lambda, FracOrder alpha, double hbar, cplx hamiltonian_scaling);

}  // namespace combfrac
