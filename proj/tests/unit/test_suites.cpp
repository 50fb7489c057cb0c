#include <stdexcept>
#include "doctest.h"
#include "diracshell/suites.hpp"

using namespace dshell;

TEST_CASE("suite registry and validation") {
  CHECK(suite_ids().size() == 11);
  CHECK(is_suite("eps-rate"));
  CHECK_FALSE(is_suite("eps"));
  SuiteConfig c;
  c.masses = {10, 20, 40};
  CHECK_THROWS_AS(c.validate("mass-rate"), std::invalid_argument);
  c.masses = {};
  CHECK_THROWS_AS(c.validate("full-rate"), std::invalid_argument);
  CHECK_NOTHROW(c.validate("clifford"));
  CHECK_THROWS_AS(run_suite("nope", SuiteConfig{}), std::invalid_argument);
}

TEST_CASE("algebra suite passes") {
  const auto r = run_suite("clifford", SuiteConfig{});
  CHECK(r.pass());
  CHECK(r.find("clifford.spin") != nullptr);
}

TEST_CASE("symbol suite at few states") {
  SuiteConfig c;
  c.states = 50;
  c.residual_states = 6;
  const auto r = run_suite("symbols", c);
  for (const char* name : {"symbols.spectral", "symbols.expm", "residual.A0", "residual.A1", "residual.A1.transport",
                           "residual.A2.transport", "boundary.P+Aj", "order.report"}) {
    INFO(name);
    REQUIRE(r.find(name) != nullptr);
    CHECK(r.find(name)->pass);
  }
  // The closed-form A2 is not an exact transport solution; the suite reports it as failing.
  CHECK_FALSE(r.find("residual.A2")->pass);
}

TEST_CASE("eps-rate suite on a coarse mesh fits slope one") {
  SuiteConfig c;
  c.mesh = 8;
  c.targets = 6;
  const auto r = run_suite("eps-rate", c);
  REQUIRE(r.fit("mit_exterior") != nullptr);
  CHECK(r.fit("mit_exterior")->slope == doctest::Approx(1.0).epsilon(0.3));
  CHECK(r.table.rows.size() == 4);
}
