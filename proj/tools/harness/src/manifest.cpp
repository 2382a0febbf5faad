#include "harness/manifest.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace harness {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::report_only: return "report-only";
  }
  return "?";
}

// Shortest representation that round-trips.
std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string cnum(std::complex<double> z) {
  return num(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

std::string alpha_tag(double a) {
  std::string s = num(a);
  for (char& c : s)
    if (c == '.') c = 'p';
  return "a" + s;
}

void RunManifest::check(const std::string& name, bool pass, double measured, double threshold,
                        const std::string& detail) {
  if (find(name)) throw std::logic_error("check recorded twice: " + name);
  checks.push_back({name, pass ? CheckStatus::pass : CheckStatus::fail, measured, threshold, detail});
}

void RunManifest::report(const std::string& name, double measured, const std::string& detail) {
  if (find(name)) throw std::logic_error("check recorded twice: " + name);
  checks.push_back({name, CheckStatus::report_only, measured, 0.0, detail});
}

Table& RunManifest::table(const std::string& name, std::vector<std::string> header) {
  for (auto& t : tables)
    if (t.name == name) throw std::logic_error("table recorded twice: " + name);
  tables.push_back({name, std::move(header), {}});
  return tables.back();
}

bool RunManifest::all_pass() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return false;
  return true;
}

const Check* RunManifest::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace harness
