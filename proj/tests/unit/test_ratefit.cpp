#include <stdexcept>
#include <random>

#include "doctest.h"
#include "diracshell/ratefit.hpp"

using namespace dshell;

TEST_CASE("exact power laws") {
  std::vector<std::pair<double, double>> p, q;
  for (double e : {0.2, 0.1, 0.05, 0.025}) p.emplace_back(e, 3.0 * e);
  for (double M : {10.0, 20.0, 40.0, 80.0}) q.emplace_back(M, 2.0 / M);
  auto f = fit_rate(p);
  CHECK(f.slope == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0));
  CHECK(fit_rate(q).slope == doctest::Approx(-1.0));
  CHECK(apply_band(f, 0.7, 1.3));
  CHECK_FALSE(apply_band(f, 1.5, 2.0));
}

TEST_CASE("noisy slope-one data") {
  std::mt19937 gen(11);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<std::pair<double, double>> p;
  for (double e = 0.2; e > 0.01; e /= 2) p.emplace_back(e, 0.7 * e * (1 + noise(gen)));
  const auto f = fit_rate(p);
  CHECK(f.slope >= 0.9);
  CHECK(f.slope <= 1.1);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_rate({{1, 1}, {2, 2}, {3, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({{1, 1}, {2, 2}, {3, 3}, {4, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({{1, 1}, {2, 2}, {3, -3}, {4, 4}}), std::invalid_argument);
}
