#include <cmath>

#include <doctest.h>

#include <combfrac/ftse.hpp>

using namespace combfrac;

namespace {

HamiltonianSpec harmonic_spec() {
  HamiltonianSpec s;
  s.kind = PotentialKind::harmonic;
  s.x_grid = {-8.0, 0.125, 128};
  s.boundary = Boundary::dirichlet;
  return s;
}

CVector gaussian(const Grid1D& g, double sigma, double k0) {
  CVector v(g.n);
  for (int k = 0; k < g.n; ++k) {
    const double x = g.at(k);
    v[k] = std::exp(-x * x / (4.0 * sigma * sigma)) * std::polar(1.0, k0 * x);
  }
  return v / (v.norm() * std::sqrt(g.step));
}

}  // namespace

TEST_CASE("alpha = 1 conserves the norm") {
  HamiltonianSpec s;
  s.x_grid = {-12.8, 0.1, 256};
  const Hamiltonian H(s);
  const CVector psi0 = gaussian(s.x_grid, 1.0, 2.0);
  const auto traj = ftse_solve(psi0, {&H, 1.0}, {1.0}, 1e-3, 1000, 1.0, 100);
  for (const auto& v : traj.states) CHECK(std::abs(l2_norm(v, 0.1) - 1.0) < 1e-8);
}

TEST_CASE("alpha = 1 tracks the eigenvector phase") {
  const auto spec = harmonic_spec();
  const auto pairs = eigenpairs(spec, 1);
  const Hamiltonian H(spec);
  const auto traj = ftse_solve(pairs[0].psi, {&H, 1.0}, {1.0}, 1e-3, 1000, 1.0, 1000);
  const CVector ex = std::exp(-I * pairs[0].lambda * 1.0) * pairs[0].psi;
  CHECK(relative_l2(traj.states.back(), ex) < 1e-6);
}

TEST_CASE("fractional steps follow the Mittag-Leffler spectral solution") {
  const auto spec = harmonic_spec();
  const auto pairs = eigenpairs(spec, 2);
  const Hamiltonian H(spec);
  const cplx scale = -I / std::sqrt(2.0);
  for (double a : {0.5, 0.75}) {
    const CVector psi0 = pairs[0].psi + 0.5 * pairs[1].psi;
    const auto traj = ftse_solve(psi0, {&H, scale}, {a}, 2e-3, 500, 1.0, 500);
    const CVector ex = ftse_spectral_solution(pairs, {1.0, 0.5}, {a}, 1.0, 1.0, scale);
    CHECK(relative_l2(traj.states.back(), ex) < 2e-3);
  }
}

TEST_CASE("the fractional flow is not unitary") {
  const auto spec = harmonic_spec();
  const auto pairs = eigenpairs(spec, 1);
  const Hamiltonian H(spec);
  const auto traj = ftse_solve(pairs[0].psi, {&H, -I / std::sqrt(2.0)}, {0.5}, 1e-3, 1000, 1.0, 1000);
  CHECK(std::abs(traj.states.back().norm() - 1.0) > 1e-3);
}

TEST_CASE("the stepper is linear in the initial state") {
  const auto spec = harmonic_spec();
  const Hamiltonian H(spec);
  const CVector u = gaussian(spec.x_grid, 0.8, 0.0), v = gaussian(spec.x_grid, 1.3, 1.0);
  const cplx a(0.5, 2.0);
  auto run = [&](const CVector& w) { return ftse_solve(w, {&H, -I}, {0.5}, 1e-2, 40, 1.0, 40).states.back(); };
  CHECK((run(u + a * v) - run(u) - a * run(v)).norm() < 1e-11);
}

TEST_CASE("spectral solution at t = 0 is the initial state") {
  const auto pairs = eigenpairs(harmonic_spec(), 3);
  const CVector ex = ftse_spectral_solution(pairs, {1.0, -2.0, cplx(0.0, 1.0)}, {0.4}, 1.0, 0.0, 1.0);
  const CVector ref = pairs[0].psi - 2.0 * pairs[1].psi + I * pairs[2].psi;
  CHECK((ex - ref).norm() < 1e-14);
}

TEST_CASE("effective_eigenvalue divides by (i hbar)^alpha") {
  const cplx e = effective_eigenvalue(2.0, {0.5}, 1.0, 1.0);
  CHECK(std::abs(e - 2.0 / std::sqrt(I)) < 1e-14);
  CHECK(std::abs(effective_eigenvalue(3.0, {1.0}, 2.0, 1.0) - 3.0 / (2.0 * I)) < 1e-14);
}

TEST_CASE("ftse_step matches the stepper for a single step") {
  const auto spec = harmonic_spec();
  const Hamiltonian H(spec);
  const CVector psi0 = gaussian(spec.x_grid, 1.0, 0.5);
  FtseState a = FtseState::initial(psi0, {0.5}, 1e-2);
  FtseState b = a;
  ftse_step(a, {&H, -I}, 1.0);
  FtseStepper st({&H, -I}, {0.5}, 1e-2, 1.0);
  st.step(b);
  CHECK((a.psi - b.psi).norm() < 1e-13);
  CHECK(a.step_index == 1);
}

TEST_CASE("invalid FTSE input is rejected") {
  const Hamiltonian H(harmonic_spec());
  const CVector psi0 = CVector::Zero(128);
  CHECK_THROWS_AS(FtseStepper({&H, 1.0}, {1.5}, 1e-3, 1.0), Error);
  CHECK_THROWS_AS(FtseStepper({&H, 1.0}, {0.5}, -1e-3, 1.0), Error);
  CHECK_THROWS_AS(ftse_solve(CVector::Zero(5), {&H, 1.0}, {0.5}, 1e-3, 10, 1.0), Error);
  const auto traj = ftse_solve(psi0, {&H, 1.0}, {0.5}, 1e-3, 10, 1.0);
  CHECK(traj.states.back().norm() == 0.0);
}
