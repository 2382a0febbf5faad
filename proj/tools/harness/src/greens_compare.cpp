#include <cmath>
#include <string>

#include <combfrac/comb.hpp>
#include <combfrac/greens.hpp>

#include "harness/experiments.hpp"

namespace harness {

using namespace combfrac;

namespace {

double rel(cplx a, cplx ref) { return std::abs(a - ref) / std::max(std::abs(ref), 1e-300); }

std::vector<std::string> row(const std::string& route, double key, double y, double t, cplx v, double err) {
  return {route, num(key), num(y), num(t), num(v.real()), num(v.imag()), num(err)};
}

}  // namespace

SimulationComparison greens_simulation(const RunConfig& cfg) {
  SimulationComparison out;
  for (double lambda : cfg.lambdas) {
    DeltaLineConfig dl;
    dl.lambda = lambda;
    dl.hbar = cfg.hbar;
    dl.dy = cfg.sim_dy;
    dl.ly = cfg.sim_ly;
    dl.dt_factor = cfg.sim_dt_factor;
    const auto r = delta_line_extrapolated(dl, cfg.ys, cfg.times);
    for (std::size_t i = 0; i < r.times.size(); ++i)
      for (std::size_t j = 0; j < cfg.ys.size(); ++j) {
        const cplx ex = greens_closed_form(lambda, cfg.ys[j], r.times[i], cfg.hbar);
        const double e = rel(r.values[i][j], ex);
        out.rows.push_back({lambda, cfg.ys[j], r.times[i], r.values[i][j], ex, e});
        out.max_relative = std::max(out.max_relative, e);
      }
  }
  return out;
}

RunManifest run_greens_compare(const RunConfig& cfg) {
  RunManifest m;
  m.config = cfg;
  const double hb = cfg.hbar;
  auto& routes = m.table("greens_routes", {"route", "lambda_or_dx", "y", "t", "re", "im", "error"});

  // Spectral routes on the (lambda, y, t) grid.
  double worst_tu = 0.0, worst_cu = 0.0, worst_sym = 0.0;
  int failed = 0;
  for (double lambda : cfg.lambdas)
    for (double y : cfg.ys)
      for (double t : cfg.times) {
        try {
          const auto gt = greens_time(lambda, y, t, hb, BromwichContour::for_time(t, cfg.contour_samples));
          GreensQuery q;
          q.lambda = lambda;
          q.y = y;
          q.t = t;
          q.hbar = hb;
          const auto gu = greens_u_integral(q);
          q.y = -y;
          const auto gm = greens_u_integral(q);
          const cplx gc = greens_closed_form(lambda, y, t, hb);
          worst_tu = std::max(worst_tu, rel(gt.value, gu.value));
          worst_cu = std::max(worst_cu, rel(gc, gu.value));
          worst_sym = std::max(worst_sym, std::abs(gm.value - gu.value));
          routes.add(row("laplace_time", lambda, y, t, gt.value, gt.error_estimate));
          routes.add(row("u_integral", lambda, y, t, gu.value, gu.error_estimate));
          routes.add(row("closed_form", lambda, y, t, gc, 0.0));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::precision_loss) throw;
          ++failed;
          routes.add({"precision_loss", num(lambda), num(y), num(t), "nan", "nan", num(e.measure())});
        }
      }
  m.check("greens_time_vs_u_integral", failed == 0 && worst_tu <= 1e-6, worst_tu, 1e-6,
          std::to_string(failed) + " rows lost to precision");
  m.check("closed_form_vs_u_integral", failed == 0 && worst_cu <= 1e-6, worst_cu, 1e-6);
  m.check("y_reflection_symmetry", worst_sym == 0.0, worst_sym, 0.0, "u-integral at y and -y");

  {
    const cplx g = greens_closed_form(0.0, 0.0, 1.0, hb);
    // The printed image carries +i hbar, which flips the overall sign.
    const cplx printed = -(1.0 - I) / (2.0 * std::sqrt(pi * hb));
    const cplx ex = -printed;
    m.check("closed_form_origin", rel(g, ex) <= 1e-12, rel(g, ex), 1e-12,
            "lambda = 0, y = 0, t = 1; expected (1-i)/(2 sqrt(pi hbar))");
    m.ledger.push_back({"greens_closed_form_origin", cnum(printed), cnum(g), std::abs(printed - g),
                        "lambda = 0, y = 0, t = 1; printed Laplace image against the derived closed form"});
  }

  // Printed vs derived Laplace image and u-integral.
  {
    const cplx lp = greens_laplace(0.0, 0.0, 1.0, hb, GreensForm::printed);
    const cplx ld = greens_laplace(0.0, 0.0, 1.0, hb, GreensForm::derived);
    m.ledger.push_back({"greens_laplace_numerator", cnum(lp), cnum(ld), std::abs(lp - ld),
                        "lambda = 0, y = 0, s = hbar = 1; the re-derived image carries -i hbar"});
    GreensQuery q;
    q.lambda = 1.0;
    q.y = 0.5;
    q.t = 1.0;
    q.hbar = hb;
    const cplx up = greens_u_integral(q, GreensForm::printed).value;
    const cplx ud = greens_u_integral(q, GreensForm::derived).value;
    const cplx gt = greens_time(1.0, 0.5, 1.0, hb, BromwichContour::for_time(1.0, cfg.contour_samples)).value;
    m.ledger.push_back({"greens_u_integral_phase", cnum(up), cnum(ud), rel(up, gt),
                        "lambda = 1, y = 0.5, t = 1; residual of the printed form against the Bromwich route"});
  }

  if (cfg.simulate) {
    const auto sim = greens_simulation(cfg);
    auto& st = m.table("greens_simulation", {"lambda", "y", "t", "sim_re", "sim_im", "exact_re", "exact_im", "relative"});
    for (const auto& r : sim.rows)
      st.add({num(r.lambda), num(r.y), num(r.t), num(r.simulated.real()), num(r.simulated.imag()), num(r.exact.real()),
              num(r.exact.imag()), num(r.relative)});
    m.check("greens_vs_delta_line_simulation", sim.max_relative <= 1e-2, sim.max_relative, 1e-2,
            "Richardson-extrapolated delta-line run");
  }

  // I(A, B) against the Bessel-K form, plus the printed closed form.
  {
    auto& it = m.table("i_ab", {"re_a", "im_a", "re_b", "im_b", "quad_re", "quad_im", "bessel_re", "bessel_im",
                                "printed_re", "printed_im", "relative"});
    double worst = 0.0, worst_printed = 0.0;
    for (double ar : {0.1, 1.0, 10.0})
      for (double ai : {-3.0, 0.0, 3.0})
        for (double br : {0.1, 1.0, 10.0})
          for (double bi : {-3.0, 0.0, 3.0}) {
            const auto r = i_ab({ar, ai}, {br, bi});
            const double e = rel(r.quadrature, r.bessel_form);
            worst = std::max(worst, e);
            worst_printed = std::max(worst_printed, rel(r.printed_form, r.quadrature));
            it.add({num(ar), num(ai), num(br), num(bi), num(r.quadrature.real()), num(r.quadrature.imag()),
                    num(r.bessel_form.real()), num(r.bessel_form.imag()), num(r.printed_form.real()),
                    num(r.printed_form.imag()), num(e)});
          }
    m.check("i_ab_vs_bessel", worst <= 1e-8, worst, 1e-8, "Re A, Re B in {0.1, 1, 10}, Im in {-3, 0, 3}");
    m.report("i_ab_printed_form", worst_printed, "printed closed form against quadrature");
    const auto one = i_ab(1.0, 1.0);
    m.ledger.push_back({"i_ab_closed_form", cnum(one.printed_form), cnum(one.bessel_form),
                        rel(one.printed_form, one.quadrature), "A = B = 1; quadrature " + cnum(one.quadrature)});

    // d^2 I / dA dB = I by central differences.
    const double h = 1e-3;
    auto Iv = [](cplx a, cplx b) { return i_ab(a, b).quadrature; };
    const cplx mixed = (Iv(1.0 + h, 1.0 + h) - Iv(1.0 + h, 1.0 - h) - Iv(1.0 - h, 1.0 + h) + Iv(1.0 - h, 1.0 - h)) /
                       (4.0 * h * h);
    const double e = rel(mixed, Iv(1.0, 1.0));
    m.check("i_ab_mixed_derivative", e <= 1e-4, e, 1e-4, "central differences at A = B = 1");
  }

  // Free-particle routes and the stationary-phase ordering.
  {
    auto& ft = m.table("free_routes", {"route", "dx_abs", "y", "t", "re", "im", "error"});
    double worst = 0.0;
    for (double dx : cfg.dx_abs)
      for (double y : cfg.ys)
        for (double t : cfg.times) {
          const auto q = greens_free_quadrature(dx, y, t, hb);
          const auto u = greens_free_u_route(dx, y, t, hb);
          worst = std::max(worst, rel(q.value, u.value));
          ft.add(row("xi_quadrature", dx, y, t, q.value, q.error_estimate));
          ft.add(row("u_route", dx, y, t, u.value, u.error_estimate));
        }
    m.check("free_xi_vs_u_route", worst <= 1e-6, worst, 1e-6);

    auto& sp = m.table("stationary_phase", {"hbar_t", "dx_abs", "y", "quad_re", "quad_im", "generic_re", "generic_im",
                                            "generic_rel", "printed_re", "printed_im", "printed_rel", "warning"});
    std::vector<double> errs;
    for (double ht : cfg.ht_values) {
      const double t = ht / hb, y = cfg.sp_ratio * ht, dx = cfg.dx_abs.back();
      const auto q = greens_free_quadrature(dx, y, t, hb);
      const auto g = greens_stationary_phase(dx, y, t, hb, StationaryPhaseForm::generic);
      const auto p = greens_stationary_phase(dx, y, t, hb, StationaryPhaseForm::paper_printed);
      errs.push_back(rel(g.value, q.value));
      const double pe = p.defined ? rel(p.value, q.value) : std::nan("");
      sp.add({num(ht), num(dx), num(y), num(q.value.real()), num(q.value.imag()), num(g.value.real()),
              num(g.value.imag()), num(errs.back()), num(p.value.real()), num(p.value.imag()), num(pe),
              g.warning ? "1" : "0"});
      m.ledger.push_back({"stationary_phase_printed_ht" + num(ht), cnum(p.value), cnum(g.value), pe,
                          p.note + "; residual against the xi quadrature"});
    }
    const bool ordered = errs.size() >= 2 && errs.back() < errs.front();
    m.check("stationary_phase_ordering", ordered, errs.back(), errs.front(),
            "error at the largest hbar t against the smallest");

    const double xi0 = printed_stationary_point(1.0, 10.0, hb);
    const double d = std::abs(printed_phase_derivative(xi0, 1.0, 10.0, hb));
    m.check("printed_stationary_point", d <= 1e-10, d, 1e-10, "phase derivative at |y|/(2 hbar t)");
  }
  return m;
}

}  // namespace harness
