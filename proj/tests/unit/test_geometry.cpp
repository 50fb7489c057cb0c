#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "diracshell/geometry.hpp"

using namespace dshell;

TEST_CASE("sphere quadrature integrates area and polynomials") {
  const auto s = make_sphere(1.5, 10);
  CHECK(s.size() == 10 * 20);
  CHECK(s.total_area() == doctest::Approx(4 * M_PI * 1.5 * 1.5).epsilon(1e-13));
  double z4 = 0;
  for (int i = 0; i < s.size(); ++i) z4 += s.weights[i] * std::pow(s.dirs[i][2], 4);
  CHECK(z4 == doctest::Approx(4 * M_PI * 1.5 * 1.5 / 5).epsilon(1e-13));
  const auto [k1, k2] = s.principal_curvatures(3);
  CHECK(k1 == doctest::Approx(-1 / 1.5));
  CHECK(k2 == doctest::Approx(-1 / 1.5));
}

TEST_CASE("prolate spheroid area against the closed form") {
  const double a = 1.0, c = 2.0;
  const double e = std::sqrt(1 - a * a / (c * c));
  const double exact = 2 * M_PI * a * a * (1 + c / (a * e) * std::asin(e));
  CHECK(make_ellipsoid(Vec3(a, a, c), 24).total_area() == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("parallel surfaces of a sphere") {
  const auto s = make_sphere(1.0, 8);
  const auto p = parallel_surface(s, 0.1);
  for (int i = 0; i < p.size(); ++i) {
    CHECK(p.nodes[i].norm() == doctest::Approx(1.1));
    CHECK(p.nu(i).dot(s.nu(i)) == doctest::Approx(1.0));
    CHECK(p.normals[i].dot(s.normals[i]) == doctest::Approx(-1.0));
  }
  CHECK(p.total_area() == doctest::Approx(4 * M_PI * 1.21).epsilon(1e-12));
  const auto z = parallel_surface(s, 0.0);
  for (int i = 0; i < s.size(); ++i) CHECK((z.nodes[i] - s.nodes[i]).norm() < 1e-15);
}

TEST_CASE("shell volume and the transport map") {
  const auto s = make_sphere(1.0, 8);
  const double eps = 0.05;
  CHECK(shell_quadrature(s, eps, 4).volume() == doctest::Approx(4 * M_PI / 3 * (std::pow(1 + eps, 3) - 1)).epsilon(1e-12));
  const auto p = parallel_surface(s, eps);
  Eigen::VectorXcd f = Eigen::VectorXcd::Random(4 * s.size());
  CHECK((transform_eps_inv(s, p, transform_eps(s, p, f)) - f).norm() < 1e-13);
  // T_eps scales by the area jacobian, so the L1 mass of |f|^2 w is preserved up to it.
  const auto g = transform_eps(s, p, f);
  CHECK(g.segment<4>(0).norm() == doctest::Approx(f.segment<4>(0).norm() / std::pow(1 + eps, 2)));
}

TEST_CASE("eps guard") { CHECK(eps_guard(make_sphere(2.0, 6)) == doctest::Approx(1.0)); }
