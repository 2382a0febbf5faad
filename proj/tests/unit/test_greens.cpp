#include <cmath>

#include <doctest.h>

#include <combfrac/greens.hpp>

using namespace combfrac;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("greens_laplace at the origin") {
  CHECK(std::abs(greens_laplace(0.0, 0.0, 1.0, 1.0, GreensForm::printed) - cplx(-0.5, 0.5)) < 1e-15);
  CHECK(std::abs(greens_laplace(0.0, 0.0, 1.0, 1.0, GreensForm::derived) - cplx(0.5, -0.5)) < 1e-15);
}

TEST_CASE("greens_laplace limits") {
  CHECK(std::abs(greens_laplace(0.5, 60.0, 1.0, 1.0)) < 1e-25);
  const double lam = 1e6;
  CHECK(std::abs(greens_laplace(lam, 0.0, 1.0, 1.0)) * lam == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("greens_laplace refuses the pole") {
  // lambda - i(1+i) sqrt(s) vanishes at lambda = -1, s = i/2.
  CHECK_THROWS_AS(greens_laplace(-1.0, 0.0, cplx(0.0, 0.5), 1.0), Error);
  try {
    greens_laplace(-1.0, 0.0, cplx(0.0, 0.5), 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::pole_proximity);
  }
}

TEST_CASE("three representations of the Green's function agree") {
  for (double lam : {0.0, 1.0, 4.0})
    for (double y : {0.0, 0.5, 2.0})
      for (double t : {0.5, 2.0}) {
        const cplx c = greens_closed_form(lam, y, t, 1.0);
        const auto bt = greens_time(lam, y, t, 1.0, BromwichContour::for_time(t, 256));
        GreensQuery q;
        q.lambda = lam;
        q.y = y;
        q.t = t;
        const auto u = greens_u_integral(q);
        CHECK(rel(bt.value, c) < 1e-6);
        CHECK(rel(u.value, c) < 1e-6);
      }
}

TEST_CASE("closed form at the origin") {
  const cplx g = greens_closed_form(0.0, 0.0, 1.0, 1.0);
  CHECK(std::abs(g - (1.0 - I) / (2.0 * std::sqrt(pi))) < 1e-15);
}

TEST_CASE("the Green's function is even in y") {
  GreensQuery a, b;
  a.lambda = b.lambda = 1.0;
  a.y = 0.7;
  b.y = -0.7;
  CHECK(greens_u_integral(a).value == greens_u_integral(b).value);
  CHECK(greens_closed_form(1.0, 0.7, 1.0, 1.0) == greens_closed_form(1.0, -0.7, 1.0, 1.0));
}

TEST_CASE("GreensQuery needs exactly one of lambda and dx_abs") {
  GreensQuery q;
  CHECK_THROWS_AS(q.validate(), Error);
  q.lambda = 1.0;
  q.dx_abs = 1.0;
  CHECK_THROWS_AS(q.validate(), Error);
  q.dx_abs.reset();
  q.t = 0.0;
  CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("i_ab matches the Bessel closed form") {
  for (cplx A : {cplx(0.1, 0.0), cplx(1.0, 3.0), cplx(10.0, -3.0)})
    for (cplx B : {cplx(1.0, 0.0), cplx(0.1, -3.0), cplx(10.0, 3.0)}) {
      const auto r = i_ab(A, B);
      CHECK(rel(r.quadrature, r.bessel_form) < 1e-8);
    }
}

TEST_CASE("i_ab at A = 0 is sqrt(pi/B)") {
  const cplx B(2.0, 1.0);
  CHECK(rel(i_ab(0.0, B).quadrature, std::sqrt(pi / B)) < 1e-10);
}

TEST_CASE("i_ab printed form disagrees at A = B = 1") {
  const auto r = i_ab(1.0, 1.0);
  CHECK(std::abs(r.printed_form - std::sqrt(pi / 4.0) * std::exp(2.0)) < 1e-12);
  CHECK(rel(r.printed_form, r.quadrature) > 1.0);
}

TEST_CASE("i_ab rejects divergent input") {
  CHECK_THROWS_AS(i_ab(1.0, 0.0), Error);
  CHECK_THROWS_AS(i_ab(-1.0, 1.0), Error);
}

TEST_CASE("free Green's function: xi quadrature against the u route") {
  for (double dx : {0.5, 1.0})
    for (double y : {0.5, 2.0}) {
      const auto a = greens_free_quadrature(dx, y, 1.0, 1.0);
      const auto b = greens_free_u_route(dx, y, 1.0, 1.0);
      CHECK(rel(a.value, b.value) < 1e-6);
    }
}

TEST_CASE("printed stationary point") {
  const double xi0 = printed_stationary_point(3.0, 2.0, 1.5);
  CHECK(xi0 == doctest::Approx(3.0 / (2.0 * 1.5 * 2.0)));
  CHECK(std::abs(printed_phase_derivative(xi0, 3.0, 2.0, 1.5)) < 1e-12);
  CHECK(std::abs(printed_phase_derivative(2.0 * xi0, 3.0, 2.0, 1.5)) > 1.0);
}

TEST_CASE("stationary phase improves with hbar t") {
  double prev = 1e300;
  for (double t : {10.0, 100.0, 1000.0}) {
    const double y = 0.5 * t;
    const auto sp = greens_stationary_phase(1.0, y, t, 1.0, StationaryPhaseForm::generic);
    const auto q = greens_free_quadrature(1.0, y, t, 1.0);
    const double err = rel(sp.value, q.value);
    CHECK(err < prev);
    CHECK(sp.warning == (t < 100.0));
    prev = err;
  }
}

TEST_CASE("printed stationary-phase form is undefined at y = 0") {
  const auto sp = greens_stationary_phase(1.0, 0.0, 100.0, 1.0, StationaryPhaseForm::paper_printed);
  CHECK_FALSE(sp.defined);
}
