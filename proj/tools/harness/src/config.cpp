#include "harness/config.hpp"
#include "harness/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

namespace harness {

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::identities: return "identities";
    case Experiment::equivalence: return "equivalence";
    case Experiment::greens_compare: return "greens_compare";
    case Experiment::convergence: return "convergence";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& s) {
  if (s == "identities") return Experiment::identities;
  if (s == "equivalence") return Experiment::equivalence;
  if (s == "greens_compare" || s == "greens") return Experiment::greens_compare;
  if (s == "convergence") return Experiment::convergence;
  throw ConfigError("unknown experiment '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  const std::string t = trim(v);
  double out = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty() || !std::isfinite(out))
    throw ConfigError("expected a finite number, got '" + v + "'");
  return out;
}

int to_int(const std::string& v) {
  const std::string t = trim(v);
  int out = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) throw ConfigError("expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v) {
  const std::string t = trim(v);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

template <class T, class F>
std::vector<T> to_list(const std::string& v, F&& conv) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(conv(item));
  if (out.empty()) throw ConfigError("expected a comma-separated list, got '" + v + "'");
  return out;
}

std::string fmt(double v) { return num(v); }

template <class T>
std::string fmt_list(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, double>) out += fmt(v[i]);
    else out += std::to_string(v[i]);
  }
  return out;
}

struct Field {
  std::string key;
  std::string description;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define DOUBLE_FIELD(name, desc) \
  Field{#name, desc, [](RunConfig& c, const std::string& v) { c.name = to_double(v); }, [](const RunConfig& c) { return fmt(c.name); }}
#define INT_FIELD(name, desc) \
  Field{#name, desc, [](RunConfig& c, const std::string& v) { c.name = to_int(v); }, [](const RunConfig& c) { return std::to_string(c.name); }}
#define BOOL_FIELD(name, desc)                                                       \
  Field{#name, desc, [](RunConfig& c, const std::string& v) { c.name = to_bool(v); }, \
        [](const RunConfig& c) { return std::string(c.name ? "true" : "false"); }}
#define STRING_FIELD(name, desc) \
  Field{#name, desc, [](RunConfig& c, const std::string& v) { c.name = trim(v); }, [](const RunConfig& c) { return c.name; }}
#define DLIST_FIELD(name, desc)                                                                             \
  Field{#name, desc, [](RunConfig& c, const std::string& v) { c.name = to_list<double>(v, to_double); }, \
        [](const RunConfig& c) { return fmt_list(c.name); }}
#define ILIST_FIELD(name, desc)                                                                       \
  Field{#name, desc, [](RunConfig& c, const std::string& v) { c.name = to_list<int>(v, to_int); }, \
        [](const RunConfig& c) { return fmt_list(c.name); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      Field{"experiment", "identities | equivalence | greens_compare | convergence; must match the subcommand",
            [](RunConfig& c, const std::string& v) {
              if (experiment_from_string(trim(v)) != c.experiment)
                throw ConfigError("experiment '" + trim(v) + "' does not match the subcommand");
            },
            [](const RunConfig& c) { return std::string(to_string(c.experiment)); }},
      DOUBLE_FIELD(hbar, "dimensionless Planck constant"),
      DLIST_FIELD(alpha, "fractional orders in (0, 1]; alpha = 1 runs the reduction checks only"),
      STRING_FIELD(hamiltonian, "free | harmonic | tabulated"),
      STRING_FIELD(boundary, "periodic | dirichlet"),
      DOUBLE_FIELD(omega, "harmonic frequency"),
      STRING_FIELD(potential_file, "CSV (x, V) for hamiltonian = tabulated"),
      INT_FIELD(nx, "axis grid points"),
      INT_FIELD(ny, "y grid points (even)"),
      DOUBLE_FIELD(dx, "axis spacing"),
      DOUBLE_FIELD(dy, "y spacing"),
      DOUBLE_FIELD(dt, "time step"),
      INT_FIELD(n_steps, "number of time steps"),
      INT_FIELD(save_stride, "steps between saved samples"),
      STRING_FIELD(initial, "gaussian | zero"),
      DOUBLE_FIELD(packet_sigma, "Gaussian width of the axis profile"),
      DOUBLE_FIELD(packet_k0, "carrier wavenumber of the axis profile"),
      DOUBLE_FIELD(packet_center, "centre of the axis profile"),
      DOUBLE_FIELD(layer_gamma, "absorbing layer strength"),
      DOUBLE_FIELD(layer_fraction, "absorbing layer width as a fraction of each y half-domain"),
      DOUBLE_FIELD(leakage_threshold, "seam-band mass fraction that aborts a run"),
      STRING_FIELD(sign_convention, "auto | derived | paper"),
      ILIST_FIELD(mode_indices, "y lattice indices j of the tracked modes, l = 2 pi j / L_y"),
      BOOL_FIELD(refine, "repeat the equivalence run with dx, dy, dt halved"),
      BOOL_FIELD(residuals, "run the mode-equation residual study"),
      DOUBLE_FIELD(residual_dt, "time step of the residual study"),
      INT_FIELD(residual_samples, "Laplace samples of the residual study"),
      INT_FIELD(contour_samples, "initial Bromwich samples per half line"),
      DOUBLE_FIELD(bromwich_tol, "Bromwich refinement tolerance"),
      DLIST_FIELD(lambdas, "axis eigenvalues for the Green's function grid"),
      DLIST_FIELD(ys, "y values for the Green's function grid"),
      DLIST_FIELD(times, "times for the Green's function grid"),
      BOOL_FIELD(simulate, "run the delta-line simulation"),
      DOUBLE_FIELD(sim_dy, "coarsest y spacing of the delta-line simulation"),
      DOUBLE_FIELD(sim_ly, "period of the delta-line simulation"),
      DOUBLE_FIELD(sim_dt_factor, "delta-line dt = factor * dy^2 / hbar"),
      DLIST_FIELD(dx_abs, "|x - x'| values for the free-particle routes"),
      DLIST_FIELD(ht_values, "hbar*t values of the stationary-phase sweep (>= 10)"),
      DOUBLE_FIELD(sp_ratio, "|y| / (hbar t) along the stationary-phase sweep"),
      INT_FIELD(identity_points, "grid points of the power-law identity on [0, 1]"),
      DOUBLE_FIELD(laplace_step, "sampling step of the Laplace-rule checks"),
      ILIST_FIELD(conv_steps, "step counts of the temporal convergence study, ascending"),
      STRING_FIELD(output_dir, "default output directory"),
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& f : fields())
    if (f.key == key) return &f;
  return nullptr;
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
  const Field* f = find_field(key);
  if (!f) throw ConfigError("unknown key '" + key + "'");
  f->set(cfg, value);
}

}  // namespace

std::map<std::string, std::string> RunConfig::canonical() const {
  std::map<std::string, std::string> out;
  for (const auto& f : fields())
    if (f.key != "output_dir") out[f.key] = f.get(*this);
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [k, v] : canonical()) {
    for (char c : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(hbar > 0.0, "hbar must be positive");
  for (double a : alpha) require(a > 0.0 && a <= 1.0, "alpha entries must lie in (0, 1]");
  require(hamiltonian == "free" || hamiltonian == "harmonic" || hamiltonian == "tabulated",
          "hamiltonian must be free, harmonic or tabulated");
  require(boundary == "periodic" || boundary == "dirichlet", "boundary must be periodic or dirichlet");
  require(omega > 0.0, "omega must be positive");
  require(hamiltonian != "tabulated" || !potential_file.empty(), "hamiltonian = tabulated needs potential_file");
  require(nx >= 32 && ny >= 32, "nx and ny must be at least 32");
  require(ny % 2 == 0, "ny must be even");
  require(dx > 0.0 && dy > 0.0 && dt > 0.0, "dx, dy and dt must be positive");
  require(n_steps >= 1, "n_steps must be at least 1");
  require(save_stride >= 1 && save_stride <= n_steps, "save_stride must lie in [1, n_steps]");
  require(initial == "gaussian" || initial == "zero", "initial must be gaussian or zero");
  require(packet_sigma > 0.0, "packet_sigma must be positive");
  require(layer_gamma >= 0.0, "layer_gamma must be non-negative");
  require(layer_fraction > 0.0 && layer_fraction < 0.5, "layer_fraction must lie in (0, 0.5)");
  require(leakage_threshold > 0.0, "leakage_threshold must be positive");
  require(sign_convention == "auto" || sign_convention == "derived" || sign_convention == "paper",
          "sign_convention must be auto, derived or paper");
  for (int j : mode_indices) require(j >= -ny / 2 && j < ny / 2, "mode_indices must lie below the y Nyquist index");
  require(residual_dt > 0.0, "residual_dt must be positive");
  require(residual_samples >= 1, "residual_samples must be at least 1");
  require(contour_samples >= 64 && contour_samples % 2 == 0, "contour_samples must be even and at least 64");
  require(bromwich_tol > 0.0 && bromwich_tol < 1.0, "bromwich_tol must lie in (0, 1)");
  for (double l : lambdas) require(l >= 0.0, "lambdas must be non-negative");
  for (double y : ys) require(y >= 0.0, "ys must be non-negative");
  for (double t : times) require(t > 0.0, "times must be positive");
  require(sim_dy > 0.0 && sim_ly > 0.0 && sim_dt_factor > 0.0, "simulation parameters must be positive");
  for (double d : dx_abs) require(d >= 0.0, "dx_abs must be non-negative");
  for (double ht : ht_values) require(ht >= 10.0, "ht_values must be at least 10");
  require(sp_ratio > 0.0, "sp_ratio must be positive");
  require(identity_points >= 64, "identity_points must be at least 64");
  require(laplace_step > 0.0, "laplace_step must be positive");
  require(conv_steps.size() >= 2 && std::is_sorted(conv_steps.begin(), conv_steps.end()) && conv_steps.front() >= 10,
          "conv_steps must be ascending, at least two entries, each >= 10");
  require(!output_dir.empty(), "output_dir must not be empty");
}

RunConfig parse_config(const std::string& text, Experiment experiment, const std::string& origin) {
  RunConfig cfg;
  cfg.experiment = experiment;
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      assign(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + "field '" + key + "': " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path, Experiment experiment) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), experiment, path);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string key = trim(assignment.substr(0, eq));
  try {
    assign(cfg, key, assignment.substr(eq + 1));
  } catch (const ConfigError& e) {
    throw ConfigError("override '" + assignment + "': " + e.what());
  }
}

std::vector<KeyInfo> config_schema() {
  RunConfig defaults;
  std::vector<KeyInfo> out;
  for (const auto& f : fields()) out.push_back({f.key, f.get(defaults), f.description});
  return out;
}

}  // namespace harness
