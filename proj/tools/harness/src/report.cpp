#include "harness/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <combfrac/common.hpp>
#include <json.hpp>

namespace harness {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw combfrac::Error(combfrac::ErrorKind::io, "cannot write " + p.string());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string manifest_json(const RunManifest& m) {
  ordered_json j;
  j["experiment"] = to_string(m.config.experiment);
  j["version"] = m.version;
  j["config_hash"] = m.config.hash();
  j["created_utc"] = utc_now();
  j["duration_s"] = m.duration_s;
  j["all_pass"] = m.all_pass();
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : m.config.canonical()) cfg[k] = v;
  j["config"] = cfg;
  ordered_json fields = ordered_json::object();
  for (const auto& [k, v] : m.fields) fields[k] = v;
  j["results"] = fields;
  j["checks"] = ordered_json::array();
  for (const auto& c : m.checks)
    j["checks"].push_back({{"name", c.name},
                           {"status", to_string(c.status)},
                           {"measured", number(c.measured)},
                           {"threshold", number(c.threshold)},
                           {"detail", c.detail}});
  j["ledger"] = ordered_json::array();
  for (const auto& e : m.ledger)
    j["ledger"].push_back({{"formula", e.formula},
                           {"printed_value", e.printed_value},
                           {"derived_value", e.derived_value},
                           {"residual", number(e.residual)},
                           {"note", e.note}});
  j["tables"] = ordered_json::array();
  for (const auto& t : m.tables) j["tables"].push_back(t.name + ".csv");
  return j.dump(2) + "\n";
}

std::string table_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\n";
  }
  return os.str();
}

std::string summary_text(const RunManifest& m) {
  std::ostringstream os;
  int pass = 0, fail = 0, rep = 0;
  for (const auto& c : m.checks) {
    if (c.status == CheckStatus::pass) ++pass;
    else if (c.status == CheckStatus::fail) ++fail;
    else ++rep;
  }
  os << "experiment  " << to_string(m.config.experiment) << "\n";
  os << "config hash " << m.config.hash() << "\n";
  os << "version     " << m.version << "\n";
  os << "duration    " << std::fixed << std::setprecision(2) << m.duration_s << " s\n";
  os << "checks      " << pass << " pass, " << fail << " fail, " << rep << " report-only\n\n";
  os << std::defaultfloat;
  for (const auto& c : m.checks) {
    os << std::left << std::setw(12) << ("[" + std::string(to_string(c.status)) + "]") << c.name << "  measured "
       << std::setprecision(6) << c.measured;
    if (c.status != CheckStatus::report_only) os << "  threshold " << c.threshold;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  if (!m.fields.empty()) {
    os << "\nresults\n";
    for (const auto& [k, v] : m.fields) os << "  " << k << " = " << v << "\n";
  }
  if (!m.ledger.empty()) {
    os << "\nledger\n";
    for (const auto& e : m.ledger)
      os << "  " << e.formula << "\n    printed  " << e.printed_value << "\n    derived  " << e.derived_value
         << "\n    residual " << e.residual << "\n    " << e.note << "\n";
  }
  return os.str();
}

fs::path emit_report(const RunManifest& m, const fs::path& dir) {
  const fs::path run = dir / (std::string(to_string(m.config.experiment)) + "_" + m.config.hash());
  std::error_code ec;
  fs::create_directories(run, ec);
  if (ec) throw combfrac::Error(combfrac::ErrorKind::io, "cannot create " + run.string() + ": " + ec.message());
  {
    const fs::path probe = run / ".write_probe";
    std::ofstream p(probe);
    if (!p) throw combfrac::Error(combfrac::ErrorKind::io, "output directory not writable: " + run.string());
    p.close();
    fs::remove(probe, ec);
  }
  // Render everything before touching the target files.
  const std::string json = manifest_json(m);
  const std::string summary = summary_text(m);
  std::vector<std::pair<fs::path, std::string>> csvs;
  for (const auto& t : m.tables) csvs.emplace_back(run / (t.name + ".csv"), table_csv(t));
  for (const auto& [p, text] : csvs) write_file(p, text);
  write_file(run / "summary.txt", summary);
  write_file(run / "manifest.json", json);
  return run;
}

}  // namespace harness
