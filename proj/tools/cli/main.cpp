#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <combfrac/common.hpp>

#include "harness/experiments.hpp"
#include "harness/report.hpp"

#ifndef COMBFRAC_VERSION
#define COMBFRAC_VERSION "dev"
#endif

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, numerical = 3 };

int exit_code(combfrac::ErrorKind k) {
  switch (k) {
    case combfrac::ErrorKind::precision_loss:
    case combfrac::ErrorKind::boundary_leakage:
    case combfrac::ErrorKind::solver:
    case combfrac::ErrorKind::pole_proximity:
      return numerical;
    default:
      return usage;
  }
}

void require_writable(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto probe = dir / ".write_probe";
  std::ofstream p(probe);
  if (ec || !p) throw combfrac::Error(combfrac::ErrorKind::io, "output directory not writable: " + dir.string());
  p.close();
  std::filesystem::remove(probe, ec);
}

}  // namespace

int main(int argc, char** argv) {
  using harness::Experiment;
  CLI::App app{"Comb model / fractional Schrodinger experiment runner"};
  app.set_version_flag("--version", COMBFRAC_VERSION);
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  struct Sub {
    const char* name;
    Experiment exp;
    const char* help;
  };
  const Sub subs[] = {
      {"identities", Experiment::identities, "fractional-calculus and transform identity suite"},
      {"equivalence", Experiment::equivalence, "comb l = 0 mode against the fractional Schrodinger equation"},
      {"greens", Experiment::greens_compare, "Green's function route comparison"},
      {"convergence", Experiment::convergence, "temporal order, alpha = 1 reduction, comb unitarity"},
  };
  std::vector<CLI::App*> cmds;
  for (const auto& s : subs) {
    auto* c = app.add_subcommand(s.name, s.help);
    c->add_option("--config", config_path, "flat key = value configuration file")->check(CLI::ExistingFile);
    c->add_option("--out", out_dir, "output directory (overrides output_dir)");
    c->add_option("--override", overrides, "key=value applied after the file")->take_all();
    cmds.push_back(c);
  }
  auto* schema = app.add_subcommand("schema", "print every configuration key with its default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  if (*schema) {
    for (const auto& k : harness::config_schema())
      std::cout << k.key << " = " << k.default_value << "    # " << k.description << "\n";
    return ok;
  }

  Experiment exp = Experiment::identities;
  for (std::size_t i = 0; i < cmds.size(); ++i)
    if (*cmds[i]) exp = subs[i].exp;

  harness::RunConfig cfg;
  try {
    if (config_path.empty()) {
      cfg.experiment = exp;
    } else {
      cfg = harness::load_config(config_path, exp);
    }
    for (const auto& o : overrides) harness::apply_override(cfg, o);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.validate();
    require_writable(cfg.output_dir);
  } catch (const harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return usage;
  } catch (const combfrac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }

  try {
    auto manifest = harness::run_experiment(cfg);
    manifest.version = COMBFRAC_VERSION;
    const auto dir = harness::emit_report(manifest, cfg.output_dir);
    std::cout << harness::summary_text(manifest) << "\nwritten to " << dir.string() << "\n";
    return manifest.all_pass() ? ok : check_failed;
  } catch (const harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return usage;
  } catch (const combfrac::Error& e) {
    std::cerr << "aborted (" << combfrac::to_string(e.kind()) << "): " << e.what();
    if (!std::isnan(e.measure())) std::cerr << " [" << e.measure() << "]";
    std::cerr << "\n";
    return exit_code(e.kind());
  }
}
