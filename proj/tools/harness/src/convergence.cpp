#include <cmath>

#include <combfrac/comb.hpp>
#include <combfrac/ftse.hpp>

#include "harness/experiments.hpp"

namespace harness {

using namespace combfrac;

namespace {

// Least-squares slope of log(err) against log(dt).
double fitted_order(const std::vector<double>& dt, const std::vector<double>& err) {
  const std::size_t n = dt.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(dt[i]) / n;
    my += std::log(err[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(dt[i]) - mx) * (std::log(err[i]) - my);
    sxx += (std::log(dt[i]) - mx) * (std::log(dt[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

RunManifest run_convergence(const RunConfig& cfg) {
  RunManifest m;
  m.config = cfg;
  const auto spec = hamiltonian_spec(cfg);
  const Hamiltonian H(spec);
  const double T = cfg.n_steps * cfg.dt;

  // Two lowest eigenstates keep the exact solution resolvable at every alpha.
  {
    const auto pairs = eigenpairs(spec, 2);
    const CVector g = pairs[0].psi + 0.5 * pairs[1].psi;
    const std::vector<cplx> c{1.0, 0.5};
    auto& ot = m.table("ftse_temporal_order", {"alpha", "n_steps", "dt", "relative_l2"});
    for (double a : cfg.alpha) {
      const CVector ex = ftse_spectral_solution(pairs, c, {a}, cfg.hbar, T, 1.0);
      std::vector<double> dts, errs;
      for (int n : cfg.conv_steps) {
        const double dt = T / n;
        const auto tr = ftse_solve(g, {&H, 1.0}, {a}, dt, n, cfg.hbar, n);
        dts.push_back(dt);
        errs.push_back(relative_l2(tr.states.back(), ex));
        ot.add({num(a), std::to_string(n), num(dt), num(errs.back())});
      }
      const double order = fitted_order(dts, errs);
      m.check("ftse_order_" + alpha_tag(a), std::abs(order - (2.0 - a)) <= 0.3, order, 2.0 - a,
              "fitted over n_steps in conv_steps, expected 2 - alpha +- 0.3");
    }
  }

  // alpha = 1 against the analytic free Gaussian on the periodic grid.
  {
    HamiltonianSpec fs = spec;
    fs.kind = PotentialKind::free;
    fs.boundary = Boundary::periodic;
    const Hamiltonian F(fs);
    const double s = 1.5, hb = cfg.hbar;
    CVector p0(fs.x_grid.n), ex(fs.x_grid.n);
    const cplx st = 1.0 + I * hb * T / (2.0 * s * s);
    for (int i = 0; i < fs.x_grid.n; ++i) {
      const double x = fs.x_grid.at(i);
      p0[i] = std::exp(-x * x / (4.0 * s * s));
      ex[i] = std::exp(-x * x / (4.0 * s * s * st)) / std::sqrt(st);
    }
    const auto tr = ftse_solve(p0, {&F, 1.0}, {1.0}, cfg.dt, cfg.n_steps, hb, cfg.n_steps);
    const double e = relative_l2(tr.states.back(), ex);
    m.check("alpha1_free_gaussian", e <= 1e-4, e, 1e-4, "relative L2 at t = n_steps * dt");
  }

  // Comb norm conservation with the absorbing layer off.
  {
    const CombGrid grid = comb_grid(cfg);
    CombField f = CombField::axis_delta(grid, cfg.hbar, axis_profile(cfg, grid));
    // Smooth the y profile so the test is not dominated by the grid delta.
    for (int ix = 0; ix < grid.nx; ++ix)
      for (int iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.y(iy);
        f.at(ix, iy) = f.at(ix, 0) * grid.dy * std::exp(-y * y / 2.0);
      }
    CombOptions opt;
    opt.layer.enabled = false;
    StrangSplitPropagator prop(grid, H, cfg.dt, opt);
    const double n0 = f.norm();
    double drift = 0.0;
    auto& nt = m.table("comb_norm", {"step", "norm"});
    LeakageMonitor mon;
    mon.threshold = 1.0;  // the seam is irrelevant without a layer
    comb_run(f, prop, cfg.n_steps, cfg.save_stride, [&](int step, double, const CombField& c) {
      const double n = c.norm();
      drift = std::max(drift, n0 > 0.0 ? std::abs(n - n0) / n0 : n);
      nt.add({std::to_string(step), num(n)});
    }, mon);
    m.check("comb_unitarity", drift <= 1e-10, drift, 1e-10,
            std::to_string(cfg.n_steps) + " Strang steps, layer disabled");
  }
  return m;
}

}  // namespace harness
