#include <cmath>

#include <doctest.h>

#include <combfrac/comb.hpp>

using namespace combfrac;

namespace {

CombGrid small_grid() {
  CombGrid g;
  g.nx = 64;
  g.ny = 128;
  g.dx = 0.2;
  g.dy = 0.1;
  g.x0 = -6.4;
  return g;
}

Hamiltonian free_h(const CombGrid& g) {
  HamiltonianSpec s;
  s.x_grid = g.x_grid();
  return Hamiltonian(s);
}

CombField packet(const CombGrid& g) {
  return CombField::sample(g, 1.0, [](double x, double y) {
    return std::exp(-x * x / 2.0 - y * y / 0.5) * std::polar(1.0, 0.8 * x);
  });
}

CombOptions no_layer() {
  CombOptions o;
  o.layer.enabled = false;
  return o;
}

}  // namespace

TEST_CASE("grid rows are in FFT order") {
  const auto g = small_grid();
  CHECK(g.y(0) == 0.0);
  CHECK(g.y(1) == doctest::Approx(0.1));
  CHECK(g.y(g.ny - 1) == doctest::Approx(-0.1));
  CHECK(g.ly() == doctest::Approx(12.8));
}

TEST_CASE("axis_delta carries the grid delta") {
  const auto g = small_grid();
  const CVector gx = CVector::Constant(g.nx, 2.0);
  const auto f = CombField::axis_delta(g, 1.0, gx);
  CHECK(f.at(3, 0) == cplx(20.0));
  CHECK(f.at(3, 1) == cplx(0.0));
  CHECK((axis_slice(f) - CVector::Constant(g.nx, 20.0)).norm() == 0.0);
}

TEST_CASE("Strang steps without absorption are unitary") {
  const auto g = small_grid();
  const auto H = free_h(g);
  CombField f = packet(g);
  const double n0 = f.norm();
  StrangSplitPropagator p(g, H, 1e-3, no_layer());
  for (int k = 0; k < 200; ++k) p.step(f);
  CHECK(std::abs(f.norm() - n0) < 1e-10 * n0);
}

TEST_CASE("the absorbing layer only removes mass") {
  const auto g = small_grid();
  const auto H = free_h(g);
  CombField f = CombField::axis_delta(g, 1.0, CVector::Constant(g.nx, 1.0));
  double prev = f.norm();
  StrangSplitPropagator p(g, H, 1e-3);
  for (int k = 0; k < 100; ++k) {
    p.step(f);
    CHECK(f.norm() <= prev * (1.0 + 1e-12));
    prev = f.norm();
  }
}

TEST_CASE("Strang and 2D Crank-Nicolson converge together under y refinement") {
  // The axis coupling leaves a cusp at y = 0, so spectral and stencil y
  // derivatives differ at low order in dy; the gap must shrink.
  auto gap = [](double dy) {
    CombGrid g = small_grid();
    g.dy = dy;
    g.ny = static_cast<int>(std::lround(12.8 / dy));
    const auto H = free_h(g);
    const auto f = CombField::sample(g, 1.0, [](double x, double y) {
      return std::exp(-x * x / 2.0 - y * y / 8.0) * std::polar(1.0, 0.8 * x);
    });
    CombField a = f, b = f;
    StrangSplitPropagator sp(g, H, 1e-3, no_layer());
    CrankNicolson2DPropagator cn(g, H, 1e-3, no_layer());
    for (int k = 0; k < 100; ++k) {
      sp.step(a);
      cn.step(b);
    }
    CHECK(std::abs(b.norm() - a.norm()) < 1e-9);
    return relative_l2(b.values, a.values);
  };
  const double coarse = gap(0.1), fine = gap(0.05);
  CHECK(coarse < 2e-2);
  CHECK(fine < 0.7 * coarse);
}

TEST_CASE("steps commute with periodic translation in x") {
  const auto g = small_grid();
  const auto H = free_h(g);
  const CombField f = packet(g);
  CombField shifted = CombField::zeros(g, 1.0);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) shifted.at((ix + 3) % g.nx, iy) = f.at(ix, iy);
  const auto a = comb_step(f, H, 1e-2);
  const auto b = comb_step(shifted, H, 1e-2);
  double err = 0.0;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) err = std::max(err, std::abs(b.at((ix + 3) % g.nx, iy) - a.at(ix, iy)));
  CHECK(err < 1e-13);
}

TEST_CASE("comb_run calls the observer on the save stride") {
  const auto g = small_grid();
  const auto H = free_h(g);
  CombField f = packet(g);
  StrangSplitPropagator p(g, H, 1e-3);
  std::vector<int> seen;
  const auto info = comb_run(f, p, 25, 10, [&](int step, double, const CombField&) { seen.push_back(step); });
  CHECK(seen == std::vector<int>{0, 10, 20});
  CHECK(info.steps == 25);
  CHECK_FALSE(info.leakage_flag);
}

TEST_CASE("the seam monitor trips on mass at the seam") {
  const auto g = small_grid();
  CombField f = CombField::zeros(g, 1.0);
  f.at(5, g.ny / 2) = 1.0;
  CHECK(seam_band_mass(f, {}) == doctest::Approx(g.dx * g.dy));
  const auto H = free_h(g);
  StrangSplitPropagator p(g, H, 1e-3, no_layer());
  const auto info = comb_run(f, p, 1, 1, nullptr);
  CHECK(info.leakage_flag);
}

TEST_CASE("lattice modes") {
  const auto g = small_grid();
  const double l = lattice_mode(g, 3);
  CHECK(l == doctest::Approx(2.0 * pi * 3 / g.ly()));
  CHECK(lattice_index(g, l) == 3);
  CHECK(lattice_index(g, -l) == -3);
  CHECK_THROWS_AS(lattice_index(g, 0.5 * l), Error);

  const auto f = packet(g);
  const auto modes = fourier_modes_y(f);
  CHECK((mode_of(f, 3) - modes[3].values).norm() < 1e-12);
}

TEST_CASE("comb_solve returns the saved snapshots") {
  const auto g = small_grid();
  const auto H = free_h(g);
  const auto traj = comb_solve(packet(g), H, 1e-3, 20, 5, no_layer());
  CHECK(traj.times.size() == 5);
  CHECK(traj.snapshots.size() == 5);
  CHECK(traj.times.back() == doctest::Approx(0.02));
  const auto mt = mode_trajectory(traj.snapshots, traj.times, 0.0);
  CHECK(mt.fields.size() == 5);
  CHECK_THROWS_AS(comb_solve(packet(g), H, 1e-3, 0, 1), Error);
}

TEST_CASE("delta line without coupling is free dispersion") {
  DeltaLineConfig cfg;
  cfg.lambda = 0.0;
  cfg.dy = 0.05;
  cfg.ly = 25.6;
  cfg.source_width = 0.5;
  const auto r = delta_line_evolve(cfg, {0.0, 1.0}, {0.5});
  // Free evolution of a normalised-to-delta Gaussian of width s.
  const double s2 = 0.25;
  auto free = [&](double y, double t) {
    const cplx w = s2 + I * t;
    return std::exp(-y * y / (2.0 * w)) / std::sqrt(2.0 * pi * w);
  };
  CHECK(std::abs(r.values[0][0] - free(0.0, 0.5)) < 1e-4);
  CHECK(std::abs(r.values[0][1] - free(1.0, 0.5)) < 1e-4);
}
