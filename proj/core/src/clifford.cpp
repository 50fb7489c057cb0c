#include "diracshell/clifford.hpp"

#include <cmath>
#include <stdexcept>

namespace dshell {

UnitVector3::UnitVector3(const Vec3& v) : v_(v) {
  if (std::abs(v.norm() - 1.0) > 1e-14) throw std::invalid_argument("UnitVector3: vector is not unit length");
}

UnitVector3 UnitVector3::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 1e-300)) throw std::invalid_argument("UnitVector3: cannot normalize a zero vector");
  return UnitVector3(v / n, Trusted{});
}

Eigen::Matrix2cd pauli(int j) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (j) {
    case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 2: s(0, 1) = -I1; s(1, 0) = I1; break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw std::out_of_range("pauli: index must be 1, 2 or 3");
  }
  return s;
}

SpinorMatrix alpha(int j) {
  if (j < 1 || j > 3) throw std::out_of_range("alpha: index must be 1, 2 or 3");
  SpinorMatrix a = SpinorMatrix::Zero();
  a.block<2, 2>(0, 2) = pauli(j);
  a.block<2, 2>(2, 0) = pauli(j);
  return a;
}

SpinorMatrix beta() {
  SpinorMatrix b = SpinorMatrix::Zero();
  b(0, 0) = b(1, 1) = 1.0;
  b(2, 2) = b(3, 3) = -1.0;
  return b;
}

SpinorMatrix gamma5() { return -I1 * alpha(1) * alpha(2) * alpha(3); }

SpinorMatrix identity4() { return SpinorMatrix::Identity(); }

SpinorMatrix alpha_dot(const Vec3& x) {
  // [[0, s.x], [s.x, 0]] written out to avoid three 4x4 products in hot loops.
  SpinorMatrix a = SpinorMatrix::Zero();
  const cplx z = x[2];
  const cplx p(x[0], -x[1]);
  const cplx q(x[0], x[1]);
  a(0, 2) = z; a(0, 3) = p; a(1, 2) = q; a(1, 3) = -z;
  a(2, 0) = z; a(2, 1) = p; a(3, 0) = q; a(3, 1) = -z;
  return a;
}

SpinorMatrix spin_dot(const Vec3& x) { return -gamma5() * alpha_dot(x); }

SpinorMatrix proj_pm_unchecked(const Vec3& nu, int sign) {
  SpinorMatrix p = SpinorMatrix::Identity();
  p -= (double(sign) * I1) * (beta() * alpha_dot(nu));
  return 0.5 * p;
}

SpinorMatrix proj_pm(const UnitVector3& nu, Sign s) { return proj_pm_unchecked(nu.vec(), to_int(s)); }

SpinorMatrix proj_pm_eps(const UnitVector3& nu_sigma, Sign s) {
  return proj_pm_unchecked(nu_sigma.vec(), -to_int(s));
}

Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

}  // namespace dshell
