// Randomized properties over fixed seeds.
#include <cmath>
#include <random>

#include <doctest.h>

#include <combfrac/comb.hpp>
#include <combfrac/fraccalc.hpp>
#include <combfrac/ftse.hpp>
#include <combfrac/greens.hpp>
#include <combfrac/special.hpp>

using namespace combfrac;

namespace {

constexpr int trials = 20;

struct Rng {
  std::mt19937_64 gen{20261018};
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  CVector vector(int n) {
    CVector v(n);
    for (auto& x : v) x = complex(1.0);
    return v;
  }
  SampledFunction smooth(int n) {
    const double a = uniform(-1.0, 1.0), b = uniform(0.5, 3.0), c = uniform(-2.0, 2.0);
    return SampledFunction::sample([=](double t) { return cplx(a + c * t * t, std::sin(b * t)); }, 0.0, 1.0 / (n - 1), n);
  }
};

double max_diff(const SampledFunction& a, const SampledFunction& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a.values[k] - b.values[k]));
  return e;
}

}  // namespace

TEST_CASE("fractional operators are linear") {
  Rng r;
  for (int k = 0; k < trials; ++k) {
    const FracOrder a{r.uniform(0.05, 1.0)};
    auto f = r.smooth(257), g = r.smooth(257), h = f;
    const cplx c = r.complex(2.0);
    for (std::size_t j = 0; j < h.size(); ++j) h.values[j] = f.values[j] + c * g.values[j];
    auto combine = [&](const SampledFunction& u, const SampledFunction& v) {
      SampledFunction w = u;
      for (std::size_t j = 0; j < w.size(); ++j) w.values[j] = u.values[j] + c * v.values[j];
      return w;
    };
    CHECK(max_diff(frac_integral(h, a), combine(frac_integral(f, a), frac_integral(g, a))) < 1e-12);
    CHECK(max_diff(caputo_deriv(h, a), combine(caputo_deriv(f, a), caputo_deriv(g, a))) < 1e-10);
  }
}

TEST_CASE("caputo annihilates constants and RL does not") {
  Rng r;
  for (int k = 0; k < trials; ++k) {
    const FracOrder a{r.uniform(0.05, 0.95)};
    const cplx c = r.complex(5.0);
    const auto f = SampledFunction::sample([&](double) { return c; }, 0.0, 0.01, 101);
    for (const auto& v : caputo_deriv(f, a).values) CHECK(v == cplx(0.0));
    const auto rl = rl_deriv(f, a);
    CHECK(std::abs(rl.values.values[50] - c * std::pow(0.5, -a.alpha) / std::tgamma(1.0 - a.alpha)) < 1e-12);
  }
}

TEST_CASE("fractional integrals compose") {
  Rng r;
  for (int k = 0; k < trials / 2; ++k) {
    const double a = r.uniform(0.1, 0.9), b = r.uniform(0.1, 1.0 - a);
    const auto f = SampledFunction::sample([](double t) { return cplx(t * t); }, 0.0, 1.0 / 4096, 4097);
    const auto two = frac_integral(frac_integral(f, {a}), {b});
    const double x = 1.0;
    CHECK(std::abs(two.values.back() - 2.0 * std::pow(x, 2.0 + a + b) / std::tgamma(3.0 + a + b)) < 1e-6);
  }
}

TEST_CASE("E_1 is the exponential on random arguments") {
  Rng r;
  MittagLefflerOptions opt;
  opt.closed_forms = false;
  for (int k = 0; k < trials; ++k) {
    const cplx z = r.complex(7.0);
    CHECK(std::abs(mittag_leffler({1.0}, z, opt) - std::exp(z)) < 1e-12 * std::abs(std::exp(z)));
  }
}

TEST_CASE("E_alpha is real on the real axis and conjugate symmetric") {
  Rng r;
  for (int k = 0; k < trials; ++k) {
    const FracOrder a{r.uniform(0.2, 1.0)};
    const cplx z = r.complex(4.0);
    CHECK(std::abs(mittag_leffler(a, std::conj(z)) - std::conj(mittag_leffler(a, z))) < 1e-10);
    CHECK(std::abs(mittag_leffler(a, z.real()).imag()) < 1e-12);
  }
}

TEST_CASE("the Faddeeva function matches its defining relation") {
  Rng r;
  for (int k = 0; k < trials; ++k) {
    const cplx z = r.complex(3.0);
    // w(-z) = 2 exp(-z^2) - w(z).
    CHECK(std::abs(faddeeva(-z) - (2.0 * std::exp(-z * z) - faddeeva(z))) < 1e-12 * (1.0 + std::abs(std::exp(-z * z))));
  }
}

TEST_CASE("CN at alpha = 1 is unitary for random data and potentials") {
  Rng r;
  for (int k = 0; k < 5; ++k) {
    HamiltonianSpec s;
    s.kind = PotentialKind::harmonic;
    s.omega = r.uniform(0.2, 2.0);
    s.x_grid = {-6.4, 0.1, 128};
    const Hamiltonian H(s);
    const CVector psi0 = r.vector(128);
    const auto tr = ftse_solve(psi0, {&H, 1.0}, {1.0}, r.uniform(1e-4, 1e-2), 200, 1.0, 200);
    CHECK(std::abs(tr.states.back().norm() / psi0.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("comb steps are linear and unitary without absorption") {
  Rng r;
  CombGrid g;
  g.nx = 32;
  g.ny = 64;
  g.x0 = -1.6;
  HamiltonianSpec s;
  s.x_grid = g.x_grid();
  const Hamiltonian H(s);
  CombOptions o;
  o.layer.enabled = false;
  for (int k = 0; k < 5; ++k) {
    CombField u = CombField::zeros(g, 1.0), v = u;
    u.values = r.vector(g.nx * g.ny);
    v.values = r.vector(g.nx * g.ny);
    const cplx c = r.complex(1.0);
    CombField w = u;
    w.values = u.values + c * v.values;
    const auto su = comb_step(u, H, 1e-3, o), sv = comb_step(v, H, 1e-3, o), sw = comb_step(w, H, 1e-3, o);
    CHECK((sw.values - su.values - c * sv.values).norm() < 1e-12 * sw.values.norm());
    CHECK(std::abs(su.norm() - u.norm()) < 1e-12 * u.norm());
  }
}

TEST_CASE("i_ab scaling law") {
  // Substituting u -> c u gives I(A, B) = sqrt(c) I(A/c, B c) for c > 0.
  Rng r;
  for (int k = 0; k < trials; ++k) {
    const cplx A(r.uniform(0.1, 5.0), r.uniform(-2.0, 2.0)), B(r.uniform(0.1, 5.0), r.uniform(-2.0, 2.0));
    const double c = r.uniform(0.3, 3.0);
    const cplx lhs = i_ab(A, B).quadrature, rhs = std::sqrt(c) * i_ab(A / c, B * c).quadrature;
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(lhs));
  }
}

TEST_CASE("closed-form Green's function is even in y and finite") {
  Rng r;
  for (int k = 0; k < trials; ++k) {
    const double lam = r.uniform(0.0, 5.0), y = r.uniform(0.1, 3.0), t = r.uniform(0.2, 3.0);
    CHECK(greens_closed_form(lam, y, t, 1.0) == greens_closed_form(lam, -y, t, 1.0));
    CHECK(std::isfinite(std::abs(greens_closed_form(lam, y, t, 1.0))));
  }
}
