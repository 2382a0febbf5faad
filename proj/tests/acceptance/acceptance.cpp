// Runs the shipped experiment configs and prints one line per acceptance
// criterion. Usage: combfrac_acceptance [--out DIR] [N ...]; no N runs all.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <combfrac/fraccalc.hpp>
#include <combfrac/ftse.hpp>
#include <harness/config.hpp>
#include <harness/experiments.hpp>
#include <harness/report.hpp>

using namespace harness;
using combfrac::cplx;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;

  void need(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Runs {
 public:
  Runs(std::filesystem::path config_dir, std::optional<std::filesystem::path> out)
      : dir_(std::move(config_dir)), out_(std::move(out)) {}

  const RunManifest& get(Experiment e, const std::string& file) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    const RunConfig cfg = load_config((dir_ / file).string(), e);
    RunManifest m = run_experiment(cfg);
    m.version = COMBFRAC_VERSION;
    if (out_) emit_report(m, *out_);
    return cache_.emplace(e, std::move(m)).first->second;
  }

 private:
  std::filesystem::path dir_;
  std::optional<std::filesystem::path> out_;
  std::map<Experiment, RunManifest> cache_;
};

// Passes when every check whose name starts with one of the prefixes passed,
// and at least one such check exists. Returns the worst measured value.
void require_prefixed(Verdict& v, const RunManifest& m, const std::vector<std::string>& prefixes) {
  for (const auto& p : prefixes) {
    int count = 0;
    bool ok = true;
    double worst = 0.0;
    for (const auto& c : m.checks) {
      if (c.name.rfind(p, 0) != 0 || c.status == CheckStatus::report_only) continue;
      ++count;
      ok = ok && c.status == CheckStatus::pass;
      worst = std::max(worst, c.measured);
    }
    v.need(count > 0 && ok, p + (count == 1 ? "" : "*") + " " + fmt(worst) + (count > 0 && ok ? "" : " FAIL"));
  }
}

void require_check(Verdict& v, const RunManifest& m, const std::string& name, const std::string& label) {
  const Check* c = m.find(name);
  const bool ok = c && c->status == CheckStatus::pass;
  v.need(ok, label + " " + (c ? fmt(c->measured) + (ok ? " <= " : " vs ") + fmt(c->threshold) : "missing"));
}

void require_runtime(Verdict& v, double seconds, double limit) {
  v.need(seconds <= limit, fmt(seconds) + " s (limit " + fmt(limit) + " s)");
}

double field(const RunManifest& m, const std::string& key) {
  auto it = m.fields.find(key);
  return it == m.fields.end() ? NAN : std::stod(it->second);
}

Verdict criterion1(Runs& r) {
  const auto& m = r.get(Experiment::identities, "identities.cfg");
  Verdict v;
  require_prefixed(v, m, {"caputo_constant_zero", "rl_power_law_", "caputo_rl_relation_", "laplace_caputo_rule_",
                          "laplace_integral_rule_", "weyl_exp_fixed_point_"});
  require_runtime(v, m.duration_s, 30.0);
  return v;
}

Verdict criterion2(Runs&) {
  const auto t0 = Clock::now();
  double e1 = 0.0;
  for (double r : {0.0, 0.5, 1.0, 2.5, 5.0, 7.5, 10.0})
    for (int k = 0; k < 24; ++k) {
      const cplx z = std::polar(r, 2.0 * combfrac::pi * k / 24.0);
      combfrac::MittagLefflerOptions opt;
      opt.closed_forms = false;
      e1 = std::max(e1, std::abs(combfrac::mittag_leffler({1.0}, z, opt) - std::exp(z)) / std::abs(std::exp(z)));
    }
  const double oracle = ml_series_oracle(0.5, -1.0);
  const double half = combfrac::mittag_leffler({0.5}, -1.0).real();
  Verdict v;
  v.need(e1 <= 1e-12, "E_1 vs exp " + fmt(e1) + " <= 1e-12");
  v.need(std::abs(half - oracle) <= 1e-6 && std::abs(half - 0.427584) <= 1e-6,
         "E_1/2(-1) = " + std::to_string(half) + ", oracle " + std::to_string(oracle));
  require_runtime(v, since(t0), 5.0);
  return v;
}

Verdict criterion3(Runs& r) {
  const auto& m = r.get(Experiment::convergence, "convergence.cfg");
  Verdict v;
  require_check(v, m, "alpha1_free_gaussian", "free Gaussian relative L2");
  require_runtime(v, m.duration_s, 60.0);
  return v;
}

Verdict criterion4(Runs& r) {
  const auto& m = r.get(Experiment::convergence, "convergence.cfg");
  Verdict v;
  require_check(v, m, "comb_unitarity", "norm drift");
  require_runtime(v, m.duration_s, 120.0);
  return v;
}

const RunManifest& equivalence(Runs& r) { return r.get(Experiment::equivalence, "equivalence.cfg"); }

Verdict criterion5(Runs& r) {
  const auto& m = equivalence(r);
  Verdict v;
  require_check(v, m, "l0_best_sign_error", "l = 0 error");
  require_check(v, m, "refinement_decreases_error", "refined error");
  require_check(v, m, "sign_separation", "sign separation");
  v.need(m.fields.count("sign_convention") > 0, "sign " + m.fields.at("sign_convention"));
  require_runtime(v, m.duration_s, 600.0);
  return v;
}

Verdict criterion6(Runs& r) {
  const auto& m = equivalence(r);
  Verdict v;
  const Check* c = m.find("information_loss");
  const bool ok = c && c->status == CheckStatus::pass;
  v.need(ok, "norm fraction outside l = 0 " + (c ? fmt(c->measured) + " > 1e-3" : std::string("missing")));
  return v;
}

Verdict criterion7(Runs& r) {
  const auto& m = equivalence(r);
  Verdict v;
  require_check(v, m, "mode_equation_laplace_residual", "Laplace residual");
  bool ledger = false;
  for (const auto& e : m.ledger) ledger = ledger || e.formula.rfind("exact_mode_equation_kernel_sign_", 0) == 0;
  v.need(ledger, ledger ? "printed-form residual in ledger" : "printed-form ledger row missing");
  require_runtime(v, field(m, "residual_run_seconds"), 120.0);
  return v;
}

Verdict criterion8(Runs& r) {
  const auto& m = r.get(Experiment::greens_compare, "greens.cfg");
  Verdict v;
  require_check(v, m, "greens_time_vs_u_integral", "time vs u-integral");
  require_check(v, m, "greens_vs_delta_line_simulation", "vs simulation");
  require_check(v, m, "i_ab_vs_bessel", "i_ab vs Bessel");
  require_check(v, m, "stationary_phase_ordering", "stationary phase at 1000 vs 10");
  require_runtime(v, m.duration_s, 300.0);
  return v;
}

Verdict criterion9(Runs& r) {
  const auto& m = equivalence(r);
  const std::string sign = m.fields.count("sign_convention") ? m.fields.at("sign_convention") : "derived";
  const auto t0 = Clock::now();
  const cplx scale = (sign == "paper" ? 1.0 : -1.0) * combfrac::I / std::sqrt(2.0);
  const cplx lam = combfrac::effective_eigenvalue(1.0, {0.5}, 1.0, scale);
  const double w = std::abs(std::abs(combfrac::mittag_leffler({0.5}, lam)) - 1.0);
  const double dt = since(t0);
  Verdict v;
  v.need(w > 1e-3, "| |E_1/2(lambda_eff)| - 1 | = " + fmt(w) + " > 1e-3 (" + sign + " sign)");
  require_check(v, m, "non_unitarity_witness", "harness witness");
  require_runtime(v, dt, 1.0);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9"};
  std::vector<int> wanted;
  std::string out;
  std::string config_dir = COMBFRAC_CONFIG_DIR;
  app.add_option("criteria", wanted, "criteria to run (default: all)")->check(CLI::Range(1, 9));
  app.add_option("--out", out, "also write each experiment report here");
  app.add_option("--configs", config_dir, "directory holding the experiment configs");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Verdict(Runs&)>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                             criterion6, criterion7, criterion8, criterion9};
  std::set<int> todo(wanted.begin(), wanted.end());
  if (todo.empty())
    for (int k = 1; k <= 9; ++k) todo.insert(k);

  Runs runs(config_dir, out.empty() ? std::nullopt : std::optional<std::filesystem::path>(out));
  bool all = true;
  for (int k : todo) {
    Verdict v;
    try {
      v = criteria[k - 1](runs);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("aborted: ") + e.what();
    }
    all = all && v.pass;
    std::printf("criterion %d: %s  %s\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
