#pragma once

#include <complex>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "harness/config.hpp"

namespace harness {

enum class CheckStatus { pass, fail, report_only };
const char* to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::report_only;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// A printed formula that disagrees with an independent derivation.
struct LedgerEntry {
  std::string formula;
  std::string printed_value;
  std::string derived_value;
  double residual = 0.0;
  std::string note;
};

struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct RunManifest {
  RunConfig config;
  std::string version;
  double duration_s = 0.0;
  std::vector<Check> checks;
  std::vector<LedgerEntry> ledger;
  std::deque<Table> tables;  // deque keeps references from table() valid
  std::map<std::string, std::string> fields;  // extra scalar results

  // Adds a check; throws std::logic_error on a repeated name.
  void check(const std::string& name, bool pass, double measured, double threshold, const std::string& detail = {});
  void report(const std::string& name, double measured, const std::string& detail = {});
  Table& table(const std::string& name, std::vector<std::string> header);

  bool all_pass() const;
  const Check* find(const std::string& name) const;
};

std::string num(double v);
std::string cnum(std::complex<double> z);
// Check-name suffix for an order, e.g. 0.25 -> a0p25.
std::string alpha_tag(double a);

}  // namespace harness
