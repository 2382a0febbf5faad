#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include <combfrac/common.hpp>
#include <harness/config.hpp>
#include <harness/manifest.hpp>
#include <harness/report.hpp>

using namespace harness;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, Experiment::identities, "t.cfg").validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

RunManifest sample_manifest() {
  RunManifest m;
  m.config.experiment = Experiment::identities;
  m.version = "test";
  m.check("a", true, 1e-9, 1e-6, "detail");
  m.check("b", false, 2.0, 1.0);
  m.report("c", 0.5);
  auto& t = m.table("values", {"x", "y"});
  t.add({"1", "2"});
  t.add({"3", "4"});
  m.ledger.push_back({"f", "1", "2", 1.0, "note"});
  return m;
}

}  // namespace

TEST_CASE("config parsing accepts comments and lists") {
  const auto c = parse_config("# comment\nhbar = 2  # trailing\nalpha = 0.3, 0.6\n\nrefine = false\n",
                              Experiment::equivalence);
  CHECK(c.hbar == 2.0);
  CHECK(c.alpha == std::vector<double>{0.3, 0.6});
  CHECK_FALSE(c.refine);
  CHECK(c.experiment == Experiment::equivalence);
}

TEST_CASE("config errors name the line") {
  CHECK(error_of("hbar = 1\nnot_a_key = 3\n").find("t.cfg:2") != std::string::npos);
  CHECK(error_of("hbar = 1\nhbar = 2\n").find("duplicate") != std::string::npos);
  CHECK(error_of("hbar 1\n").find("t.cfg:1") != std::string::npos);
  CHECK(error_of("nx = 12.5\n").find("nx") != std::string::npos);
  CHECK(error_of("hbar = -1\n").find("hbar") != std::string::npos);
  CHECK(error_of("refine = maybe\n").find("refine") != std::string::npos);
  CHECK_FALSE(error_of("alpha = 1.5\n").empty());
}

TEST_CASE("the experiment key must agree with the subcommand") {
  CHECK_THROWS_AS(parse_config("experiment = convergence\n", Experiment::identities), ConfigError);
  CHECK_NOTHROW(parse_config("experiment = identities\n", Experiment::identities));
}

TEST_CASE("overrides apply after the file and are validated") {
  RunConfig c;
  apply_override(c, "nx=64");
  apply_override(c, "alpha = 0.5");
  CHECK(c.nx == 64);
  CHECK(c.alpha == std::vector<double>{0.5});
  CHECK_THROWS_AS(apply_override(c, "bogus=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "nx"), ConfigError);
}

TEST_CASE("load_config reports a missing file") {
  CHECK_THROWS_AS(load_config("does/not/exist.cfg", Experiment::identities), ConfigError);
}

TEST_CASE("the config hash is deterministic and sensitive") {
  RunConfig a, b;
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  b.nx = 128;
  CHECK(a.hash() != b.hash());
  b.nx = a.nx;
  b.experiment = Experiment::convergence;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("every canonical key is in the schema") {
  const auto schema = config_schema();
  for (const auto& [k, v] : RunConfig{}.canonical()) {
    bool found = false;
    for (const auto& s : schema) found = found || s.key == k;
    CHECK_MESSAGE(found, k);
  }
}

TEST_CASE("manifest bookkeeping") {
  auto m = sample_manifest();
  CHECK_FALSE(m.all_pass());
  CHECK(m.find("a")->status == CheckStatus::pass);
  CHECK(m.find("c")->status == CheckStatus::report_only);
  CHECK(m.find("zzz") == nullptr);
  CHECK_THROWS_AS(m.check("a", true, 0.0, 1.0), std::logic_error);
  CHECK_THROWS_AS(m.table("values", {"x"}), std::logic_error);
  Table* first = &m.tables.front();
  for (int k = 0; k < 100; ++k) m.table("t" + std::to_string(k), {"z"});
  CHECK(first == &m.tables.front());
}

TEST_CASE("number formatting round-trips") {
  CHECK(num(0.1) == "0.1");
  CHECK(std::stod(num(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(alpha_tag(0.25) == "a0p25");
  CHECK(alpha_tag(1.0) == "a1");
  CHECK(cnum({1.0, -2.0}) == "1-2i");
}

TEST_CASE("table CSV is deterministic") {
  const auto m = sample_manifest();
  CHECK(table_csv(m.tables[0]) == "x,y\n1,2\n3,4\n");
  CHECK(table_csv(m.tables[0]) == table_csv(sample_manifest().tables[0]));
}

TEST_CASE("manifest JSON carries checks, ledger and tables") {
  const auto j = nlohmann::json::parse(manifest_json(sample_manifest()));
  CHECK(j["experiment"] == "identities");
  CHECK(j["all_pass"] == false);
  CHECK(j["checks"].size() == 3);
  CHECK(j["ledger"][0]["formula"] == "f");
  CHECK(j["config_hash"] == RunConfig{}.hash());
}

TEST_CASE("emit_report writes one directory per experiment and hash") {
  const fs::path dir = fs::temp_directory_path() / "combfrac_report_test";
  fs::remove_all(dir);
  const auto m = sample_manifest();
  const auto out = emit_report(m, dir);
  CHECK(out.filename().string() == "identities_" + m.config.hash());
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(fs::exists(out / "summary.txt"));
  CHECK(fs::exists(out / "values.csv"));
  std::ifstream in(out / "values.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == table_csv(m.tables[0]));
  fs::remove_all(dir);
}

TEST_CASE("emit_report fails before writing into an unusable directory") {
  const fs::path file = fs::temp_directory_path() / "combfrac_not_a_dir";
  std::ofstream(file) << "x";
  try {
    emit_report(sample_manifest(), file / "sub");
    FAIL("expected an I/O error");
  } catch (const combfrac::Error& e) {
    CHECK(e.kind() == combfrac::ErrorKind::io);
  }
  CHECK(fs::is_regular_file(file));
  fs::remove(file);
}
