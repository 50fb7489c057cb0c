#include <stdexcept>
#include "doctest.h"
#include "diracshell/clifford.hpp"

using namespace dshell;

TEST_CASE("Dirac matrices satisfy the anticommutation relations") {
  const SpinorMatrix I = identity4();
  for (int j = 1; j <= 3; ++j) {
    CHECK((alpha(j) * beta() + beta() * alpha(j)).norm() == doctest::Approx(0.0));
    for (int k = 1; k <= 3; ++k)
      CHECK((alpha(j) * alpha(k) + alpha(k) * alpha(j) - 2.0 * double(j == k) * I).norm() < 1e-15);
  }
  CHECK((beta() * beta() - I).norm() < 1e-15);
}

TEST_CASE("gamma5 is the off-diagonal identity") {
  SpinorMatrix g = SpinorMatrix::Zero();
  g.block<2, 2>(0, 2).setIdentity();
  g.block<2, 2>(2, 0).setIdentity();
  CHECK((gamma5() - g).norm() < 1e-15);
}

TEST_CASE("spin identities") {
  const Vec3 X(0.3, -1.2, 0.7), Y(1.1, 0.4, -0.5);
  const SpinorMatrix I = identity4();
  CHECK((I1 * alpha_dot(X) * alpha_dot(Y) - (I1 * X.dot(Y) * I + spin_dot(cross(X, Y)))).norm() < 1e-14);
  CHECK((spin_dot(X) * alpha_dot(Y) + alpha_dot(Y) * spin_dot(X) + 2.0 * X.dot(Y) * gamma5()).norm() < 1e-14);
  CHECK((spin_dot(X) * beta() - beta() * spin_dot(X)).norm() < 1e-15);
}

TEST_CASE("MIT projections") {
  const UnitVector3 nu = UnitVector3::normalized(Vec3(0.2, -0.5, 0.8));
  const SpinorMatrix Pp = proj_pm(nu, Sign::Plus), Pm = proj_pm(nu, Sign::Minus);
  CHECK((Pp + Pm - identity4()).norm() < 1e-15);
  CHECK((Pp * Pp - Pp).norm() < 1e-15);
  CHECK((Pp * Pm).norm() < 1e-15);
  CHECK((Pm * beta() - beta() * Pp).norm() < 1e-15);
  CHECK((Pp * I1 * alpha_dot(nu.vec()) - I1 * alpha_dot(nu.vec()) * Pm).norm() < 1e-15);
  // tangential tau
  Vec3 t(1.0, 0.3, -0.4);
  t -= t.dot(nu.vec()) * nu.vec();
  CHECK((Pp * spin_dot(t) - spin_dot(t) * Pm).norm() < 1e-15);
  const double m = 1.7;
  const SpinorMatrix Q = spin_dot(t) - I1 * m * beta() * alpha_dot(nu.vec());
  CHECK((Q * Q - (t.squaredNorm() + m * m) * identity4()).norm() < 1e-13);
}

TEST_CASE("unit vectors are checked") {
  CHECK_THROWS_AS(UnitVector3(Vec3(1.0, 1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(UnitVector3::normalized(Vec3::Zero()), std::invalid_argument);
  CHECK(UnitVector3::normalized(Vec3(0, 0, 3))[2] == doctest::Approx(1.0));
}
