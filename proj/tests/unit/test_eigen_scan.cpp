#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "diracshell/eigen_scan.hpp"

using namespace dshell;

TEST_CASE("s-wave MIT eigenvalue of the unit ball") {
  // Independent root of (E + m) j0(p) = p j1(p) with the standard library Bessel functions.
  auto f = [](double E) {
    const double p = std::sqrt(E * E - 1.0);
    return (E + 1.0) * std::sph_bessel(0, p) - p * std::sph_bessel(1, p);
  };
  double a = 2.0, b = 3.0;
  for (int i = 0; i < 100; ++i) {
    const double c = 0.5 * (a + b);
    (f(a) * f(c) <= 0 ? b : a) = c;
  }
  const auto roots = ball_swave_eigenvalues(1.0, 1.0, 1.0, 3.0);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(0.5 * (a + b)).epsilon(1e-12));
  CHECK(roots[0] == doctest::Approx(2.59657).epsilon(1e-5));
}

TEST_CASE("scan grid avoids the band edges") {
  for (double E : scan_grid(-3, 3, 121, 1.0)) CHECK(std::abs(std::abs(E) - 1.0) >= 1e-6);
}

TEST_CASE("coarse scan finds the ball eigenvalue and nothing in the gap") {
  ScanOptions o;
  for (int j = 3; j < 5; ++j) o.assembly.modes.push_back(j);  // m_j = -1/2, 1/2 on N = 4
  const auto sc = mit_eigen_scan(make_sphere(1.0, 4), 1.0, scan_grid(0.0, 3.0, 31, 1.0), o);
  bool found = false;
  for (const auto& d : sc.dips) {
    CHECK(std::abs(d.E) > 1.0);
    found = found || std::abs(d.E - 2.59657) < 2e-2;
  }
  CHECK(found);
}
