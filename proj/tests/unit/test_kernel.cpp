#include <stdexcept>
#include "doctest.h"
#include "diracshell/kernel.hpp"

using namespace dshell;

namespace {
// (-i alpha.grad + m beta - z) phi at x by fourth-order differences.
double dirac_residual(const SpectralPoint& sp, const Vec3& x) {
  const double h = 1e-3;
  SpinorMatrix d = (sp.m * beta() - sp.z * identity4()) * phi(sp, x);
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = h * Vec3::Unit(k);
    const SpinorMatrix g = (-phi(sp, x + 2 * e) + 8.0 * phi(sp, x + e) - 8.0 * phi(sp, x - e) + phi(sp, x - 2 * e)) / (12 * h);
    d += -I1 * alpha(k + 1) * g;
  }
  return d.norm() / phi(sp, x).norm();
}
}  // namespace

TEST_CASE("branch of k") {
  for (cplx z : {cplx(0, 0.5), cplx(2.0, 0.1), cplx(-2.0, 0.1), cplx(0.3, -0.2)}) {
    const cplx k = branch_sqrt(z, 1.0);
    CHECK(k.imag() > 0);
    CHECK(std::abs(k * k - (z * z - 1.0)) < 1e-14);
  }
}

TEST_CASE("fundamental solution solves the free equation away from the origin") {
  for (const SpectralPoint sp : {SpectralPoint(cplx(0, 0.5), 1.0), SpectralPoint(cplx(0.4, 0.3), 11.0)})
    for (const Vec3 x : {Vec3(0.3, -0.2, 0.4), Vec3(-0.1, 0.05, 0.02)}) CHECK(dirac_residual(sp, x) < 1e-6);
}

TEST_CASE("kernel split adds up and the strong part is odd") {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const Vec3 x(0.2, 0.1, -0.3);
  const auto s = kernel_split(sp, x);
  CHECK((s.weak + s.strong - phi(sp, x)).norm() < 1e-13);
  CHECK((kernel_split(sp, -x).strong + s.strong).norm() < 1e-13);
  CHECK((s.strong - I1 * alpha_dot(x) / (4 * M_PI * std::pow(x.norm(), 3))).norm() < 1e-13);
}

TEST_CASE("adjoint symmetry phi_z(x)^* = phi_conj(z)(-x)") {
  const SpectralPoint sp(cplx(0.2, 0.5), 1.0);
  const Vec3 x(0.2, 0.1, -0.3);
  CHECK((phi(sp, x).adjoint() - phi(sp.conj(), -x)).norm() < 1e-14);
}
