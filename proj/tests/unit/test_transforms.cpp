#include <cmath>

#include <doctest.h>

#include <combfrac/comb.hpp>
#include <combfrac/quadrature.hpp>
#include <combfrac/special.hpp>
#include <combfrac/transforms.hpp>

using namespace combfrac;

TEST_CASE("laplace_forward is exact on piecewise-linear data") {
  const auto f = SampledFunction::sample([](double t) { return cplx(1.0 + 2.0 * t); }, 0.0, 0.5, 81);
  const cplx s(2.0, 1.0);
  const double T = f.end();
  const cplx ref = (1.0 / s + 2.0 / (s * s)) - std::exp(-s * T) * ((1.0 + 2.0 * T) / s + 2.0 / (s * s));
  const auto r = laplace_forward(f, s);
  CHECK(std::abs(r.value - ref) < 1e-13);
  CHECK_FALSE(r.warning);
}

TEST_CASE("laplace_forward of exp(-t)") {
  const auto f = SampledFunction::sample([](double t) { return cplx(std::exp(-t)); }, 0.0, 1e-3, 40001);
  const auto r = laplace_forward(f, 1.0);
  CHECK(std::abs(r.value - 0.5) < 1e-7);
}

TEST_CASE("laplace_forward flags a short window") {
  const auto f = SampledFunction::sample([](double) { return cplx(1.0); }, 0.0, 0.1, 11);
  CHECK_THROWS_AS(laplace_forward(f, 1.0), Error);
  LaplaceOptions opt;
  opt.allow_short_window = true;
  const auto r = laplace_forward(f, 1.0, opt);
  CHECK(r.warning);
  CHECK(r.truncation_estimate > 0.0);
}

TEST_CASE("laplace_forward_columns matches the scalar transform") {
  std::vector<CVector> series;
  for (int k = 0; k <= 400; ++k) {
    CVector v(2);
    v << std::exp(-0.05 * k), cplx(0.0, 0.05 * k);
    series.push_back(v);
  }
  const cplx s(1.0, 0.5);
  const auto cols = laplace_forward_columns(series, 0.0, 0.05, s);
  REQUIRE(cols.size() == 2);
  SampledFunction f0{0.0, 0.05, {}};
  for (const auto& v : series) f0.values.push_back(v[0]);
  CHECK(std::abs(cols[0] - laplace_forward(f0, s).value) < 1e-14);
}

TEST_CASE("bromwich_invert of elementary pairs") {
  const double t = 1.0;
  const auto c = BromwichContour::for_time(t);
  SUBCASE("1/(s+1)") {
    const auto r = bromwich_invert([](cplx s) { return 1.0 / (s + 1.0); }, t, c);
    CHECK(std::abs(r.value - std::exp(-1.0)) < 1e-8);
  }
  SUBCASE("s^(-1/2)") {
    const auto r = bromwich_invert([](cplx s) { return 1.0 / std::sqrt(s); }, t, c);
    CHECK(std::abs(r.value - 1.0 / std::sqrt(pi)) < 1e-8);
  }
  SUBCASE("Mittag-Leffler image s^(a-1)/(s^a + 1)") {
    const auto r = bromwich_invert([](cplx s) { return cpow(s, -0.5) / (cpow(s, 0.5) + 1.0); }, t, c);
    CHECK(std::abs(r.value - mittag_leffler({0.5}, -1.0)) < 1e-8);
  }
}

TEST_CASE("bromwich_invert rejects a bad contour") {
  BromwichContour c;
  c.sigma = -1.0;
  CHECK_THROWS_AS(bromwich_invert([](cplx s) { return 1.0 / s; }, 1.0, c), Error);
  c = BromwichContour::for_time(1.0);
  CHECK_THROWS_AS(bromwich_invert([](cplx s) { return 1.0 / s; }, -1.0, c), Error);
}

TEST_CASE("wynn_epsilon accelerates the alternating harmonic series") {
  std::vector<cplx> sums;
  cplx acc = 0.0;
  for (int k = 1; k <= 12; ++k) {
    acc += (k % 2 ? 1.0 : -1.0) / k;
    sums.push_back(acc);
  }
  CHECK(std::abs(sums.back() - std::log(2.0)) > 1e-2);
  CHECK(std::abs(wynn_epsilon(sums) - std::log(2.0)) < 1e-8);
}

TEST_CASE("kernel_fourier matches quadrature of the damped exponential") {
  const double hbar = 1.0;
  for (cplx s : {cplx(1.0), cplx(2.0, 3.0)})
    for (double l : {0.0, 0.7, 2.5}) {
      const cplx k = (1.0 + I) * std::sqrt(s / hbar);
      auto f = [&](double y) { return 2.0 * std::exp(I * k * y) * std::cos(l * y); };
      const auto q = integrate_to_infinity(f, 0.0);
      CHECK(std::abs(kernel_fourier(s, l, hbar) - q.value) < 1e-9 * std::abs(q.value));
      CHECK(kernel_fourier(s, l, hbar, SignConvention::paper) == -kernel_fourier(s, l, hbar));
    }
}

TEST_CASE("fourier_modes_y of a y-independent field") {
  CombGrid g;
  g.nx = 32;
  g.ny = 32;
  g.dy = 0.25;
  const auto f = CombField::sample(g, 1.0, [](double x, double) { return cplx(x, 1.0); });
  const auto modes = fourier_modes_y(f);
  REQUIRE(modes.size() == 32);
  CHECK(modes[0].mode_l == 0.0);
  for (int ix = 0; ix < g.nx; ++ix) CHECK(std::abs(modes[0].values[ix] - cplx(g.x(ix), 1.0) * g.ly()) < 1e-12);
  for (std::size_t j = 1; j < modes.size(); ++j) CHECK(modes[j].values.norm() < 1e-12);
}

TEST_CASE("fourier_modes_y satisfies Parseval") {
  CombGrid g;
  g.nx = 32;
  g.ny = 64;
  g.dx = 0.3;
  g.dy = 0.2;
  const auto f = CombField::sample(g, 1.0, [](double x, double y) {
    return std::exp(-x * x - 2.0 * y * y) * std::polar(1.0, 0.7 * x + 1.3 * y);
  });
  double sum = 0.0;
  for (const auto& m : fourier_modes_y(f)) sum += m.values.squaredNorm();
  // sum_l |Psi_l|^2 dx / L_y equals the 2D norm squared.
  CHECK(sum * g.dx / g.ly() == doctest::Approx(f.norm() * f.norm()).epsilon(1e-12));
}
