#pragma once

#include <string>
#include <vector>

#include "combfrac/fraccalc.hpp"

namespace combfrac {

enum class PotentialKind { free, harmonic, tabulated };
enum class Boundary { periodic, dirichlet };

// H = -(hbar^2/2) d^2/dx^2 + V(x) on a uniform grid.
struct HamiltonianSpec {
  PotentialKind kind = PotentialKind::free;
  double hbar = 1.0;
  Grid1D x_grid{-12.8, 0.1, 256};
  Boundary boundary = Boundary::periodic;
  double omega = 1.0;         // harmonic: V = omega^2 x^2 / 2
  SampledFunction potential;  // tabulated: real samples on x_grid

  void validate() const;
};

class Hamiltonian {
 public:
  explicit Hamiltonian(const HamiltonianSpec& spec);

  const HamiltonianSpec& spec() const { return spec_; }
  int size() const { return spec_.x_grid.n; }
  double hbar() const { return spec_.hbar; }
  const Eigen::VectorXd& potential() const { return v_; }
  // Off-diagonal stencil weight -hbar^2/(2 dx^2).
  double offdiag() const { return off_; }
  bool periodic() const { return spec_.boundary == Boundary::periodic; }

  CVector apply(const CVector& psi) const;
  void apply_into(const cplx* psi, cplx* out) const;

  Eigen::MatrixXd dense() const;

  // Solves (a + b H) x = rhs; cyclic tridiagonal for periodic grids.
  CVector solve_shifted(cplx a, cplx b, const CVector& rhs) const;

 private:
  HamiltonianSpec spec_;
  Eigen::VectorXd v_;
  double off_ = 0.0;
};

// H_eff = scale * H, the generally non-Hermitian FTSE generator.
struct ScaledHamiltonian {
  const Hamiltonian* H = nullptr;
  cplx scale = 1.0;

  CVector apply(const CVector& psi) const { return scale * H->apply(psi); }
  int size() const { return H->size(); }
};

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec);
CVector apply_hamiltonian(const Hamiltonian& H, const CVector& psi);

struct EigenPair {
  double lambda = 0.0;
  CVector psi;  // unit Euclidean norm
};

// Lowest `count` eigenpairs by dense symmetric solve, ascending.
std::vector<EigenPair> eigenpairs(const HamiltonianSpec& spec, int count);

// Two-column CSV (x, V); x strictly increasing and uniform.
SampledFunction load_potential_csv(const std::string& path);

}  // namespace combfrac
