#include <stdexcept>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dshell_cli/experiment.hpp"

using namespace dshell;
using nlohmann::json;

TEST_CASE("git blob hash") {
  // `printf 'hello\n' | git hash-object --stdin`
  CHECK(cli::git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("plans reject unknown keys and bad sweeps") {
  const json ok = {{"schema_version", 1}, {"runs", {{{"suite", "eps-rate"}, {"eps", {0.2, 0.1, 0.05, 0.025}}}}}};
  CHECK(cli::parse_plan(ok).cells.size() == 1);
  json bad = ok;
  bad["runs"][0]["epsilon"] = 1;
  CHECK_THROWS_WITH_AS(cli::parse_plan(bad), doctest::Contains("unknown key 'epsilon'"), std::invalid_argument);
  bad = ok;
  bad["extra"] = 1;
  CHECK_THROWS_AS(cli::parse_plan(bad), std::invalid_argument);
  bad = ok;
  bad["bands"] = {{"rate_halfwidht", 0.2}};
  CHECK_THROWS_AS(cli::parse_plan(bad), std::invalid_argument);
  bad = ok;
  bad["runs"][0]["eps"] = json::array();
  CHECK_THROWS_WITH_AS(cli::parse_plan(bad), doctest::Contains("empty"), std::invalid_argument);
  bad = ok;
  bad["runs"][0]["eps"] = {0.2, 0.1, 0.07, 0.025};
  CHECK_THROWS_WITH_AS(cli::parse_plan(bad), doctest::Contains("geometric"), std::invalid_argument);
  bad = ok;
  bad["schema_version"] = 2;
  CHECK_THROWS_AS(cli::parse_plan(bad), std::invalid_argument);
  bad = ok;
  bad["runs"][0]["suite"] = "nope";
  CHECK_THROWS_AS(cli::parse_plan(bad), std::invalid_argument);
  bad = ok;
  bad["runs"] = json::array();
  CHECK_THROWS_AS(cli::parse_plan(bad), std::invalid_argument);
}

TEST_CASE("defaults, overrides and bands") {
  const json doc = {{"schema_version", 1},
                    {"defaults", {{"mesh", 12}, {"z", {0.1, 0.4}}, {"surface", {{"kind", "spheroid"}, {"semiaxes", {1, 1, 1.5}}}}}},
                    {"bands", {{"rate_halfwidth", 0.2}}},
                    {"runs", {{{"suite", "clifford"}, {"label", "a"}}, {{"suite", "cauchy"}, {"mesh", 8}}}}};
  const auto p = cli::parse_plan(doc);
  REQUIRE(p.cells.size() == 2);
  CHECK(p.cells[0].config.mesh == 12);
  CHECK(p.cells[1].config.mesh == 8);
  CHECK(p.cells[0].config.z == cplx(0.1, 0.4));
  CHECK(p.cells[1].config.surface.kind == "spheroid");
  CHECK(p.cells[0].label == "a");
  CHECK(p.cells[1].label == "cauchy-1");
  CHECK(p.bands.rate_halfwidth == 0.2);
  CHECK(p.config_hash.size() == 40);
}

TEST_CASE("run_plan writes reproducible outputs") {
  namespace fs = std::filesystem;
  const fs::path a = fs::temp_directory_path() / "dshell_test_a", b = fs::temp_directory_path() / "dshell_test_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const json doc = {{"schema_version", 1},
                    {"runs", {{{"suite", "symbols"}, {"label", "sym"}, {"states", 20}, {"residual_states", 4}}}}};
  const auto plan = cli::parse_plan(doc);
  const auto ra = cli::run_plan(plan, a, {});
  cli::run_plan(plan, b, {});
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(a / "sym.csv") == slurp(b / "sym.csv"));
  CHECK(fs::exists(a / "plot.py"));
  const json s = json::parse(slurp(a / "summary.json"));
  CHECK(s["config_hash"] == plan.config_hash);
  CHECK(s["cells"][0]["config"]["seed"] == 7);
  CHECK(s["bands"].contains("rate_halfwidth"));
  CHECK(s["environment"].contains("compiler"));
  CHECK(s["pass"] == ra.pass);
  std::ostringstream rep;
  CHECK(cli::print_report(a, rep) == ra.pass);
  CHECK(rep.str().find("residual.A2") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("worker count from the environment") {
  setenv("DSHELL_WORKERS", "3", 1);
  CHECK(cli::worker_count() == 3);
  setenv("DSHELL_WORKERS", "zero", 1);
  CHECK(cli::worker_count() == 1);
  unsetenv("DSHELL_WORKERS");
  CHECK(cli::worker_count() == 1);
}

TEST_CASE("csv formatting is fixed") {
  DataTable t;
  t.columns = {"x", "y"};
  t.add({1.0, 1.0 / 3.0});
  const auto f = std::filesystem::temp_directory_path() / "dshell_fmt.csv";
  cli::write_csv(t, f);
  std::ifstream in(f);
  std::string h, r;
  std::getline(in, h);
  std::getline(in, r);
  CHECK(h == "x,y");
  CHECK(r == "1.000000000000e+00,3.333333333333e-01");
  std::filesystem::remove(f);
}
