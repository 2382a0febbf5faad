#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace harness {

enum class Experiment { identities, equivalence, greens_compare, convergence };

const char* to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

// Raised for malformed files, unknown keys and invalid values. Maps to exit
// code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Experiment experiment = Experiment::identities;

  // Shared physics.
  double hbar = 1.0;
  std::vector<double> alpha{0.25, 0.5, 0.75};

  // Axis Hamiltonian.
  std::string hamiltonian = "free";  // free | harmonic | tabulated
  std::string boundary = "periodic";  // periodic | dirichlet
  double omega = 1.0;
  std::string potential_file;

  // Comb grid and time stepping.
  int nx = 256;
  int ny = 512;
  double dx = 0.1;
  double dy = 0.1;
  double dt = 1e-3;
  int n_steps = 1000;
  int save_stride = 10;

  // Initial data g(x) on the axis: gaussian | zero.
  std::string initial = "gaussian";
  double packet_sigma = 0.7;
  double packet_k0 = 1.5;
  double packet_center = 0.0;

  // Absorbing layer and seam monitor.
  double layer_gamma = 300.0;
  double layer_fraction = 0.2;
  double leakage_threshold = 1e-6;

  // Equivalence study.
  std::string sign_convention = "auto";  // auto | derived | paper
  std::vector<int> mode_indices{0, 4};
  bool refine = true;
  bool residuals = true;
  double residual_dt = 2.5e-4;
  int residual_samples = 8;

  // Laplace inversion.
  int contour_samples = 256;
  double bromwich_tol = 1e-8;

  // Green's function comparison.
  std::vector<double> lambdas{0.0, 1.0, 4.0};
  std::vector<double> ys{0.0, 0.5, 2.0};
  std::vector<double> times{0.5, 1.0, 2.0};
  bool simulate = true;
  double sim_dy = 0.025;
  double sim_ly = 51.2;
  double sim_dt_factor = 0.5;
  std::vector<double> dx_abs{0.5, 1.0};
  std::vector<double> ht_values{10.0, 100.0, 1000.0};
  double sp_ratio = 0.5;

  // Identity suite resolution.
  int identity_points = 262144;
  double laplace_step = 3.125e-5;

  // Convergence study.
  std::vector<int> conv_steps{100, 200, 400, 800};

  std::string output_dir = "results";

  // Canonical key = value listing of every resolved field, sorted by key.
  std::map<std::string, std::string> canonical() const;
  // FNV-1a over the canonical listing, 16 hex digits.
  std::string hash() const;
  void validate() const;
};

// Parses a flat key = value file; '#' starts a comment. Unknown keys and
// duplicates are rejected with the line number.
RunConfig load_config(const std::string& path, Experiment experiment);
RunConfig parse_config(const std::string& text, Experiment experiment, const std::string& origin = "<string>");

// Applies "key=value" overrides after the file.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Schema listing: key, default, description.
struct KeyInfo {
  std::string key;
  std::string default_value;
  std::string description;
};
std::vector<KeyInfo> config_schema();

}  // namespace harness
