// Dirac and Pauli matrix algebra in the standard representation.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dshell {

using cplx = std::complex<double>;
using SpinorMatrix = Eigen::Matrix4cd;
using Spinor = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr cplx I1{0.0, 1.0};

// A real 3-vector of unit length (checked at construction to 1e-14).
class UnitVector3 {
 public:
  explicit UnitVector3(const Vec3& v);
  // Normalizes v; throws if v is (numerically) zero.
  static UnitVector3 normalized(const Vec3& v);
  const Vec3& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  struct Trusted {};
  UnitVector3(const Vec3& v, Trusted) : v_(v) {}
  Vec3 v_;
};

enum class Sign { Plus = +1, Minus = -1 };

inline int to_int(Sign s) { return s == Sign::Plus ? 1 : -1; }

Eigen::Matrix2cd pauli(int j);  // j in {1,2,3}

SpinorMatrix alpha(int j);  // j in {1,2,3}
SpinorMatrix beta();
SpinorMatrix gamma5();  // -i alpha_1 alpha_2 alpha_3
SpinorMatrix identity4();

SpinorMatrix alpha_dot(const Vec3& x);
SpinorMatrix spin_dot(const Vec3& x);  // S.x = -gamma5 (alpha.x)

// P_{+/-} = (I -/+ i beta alpha.nu)/2 for a unit normal nu.
SpinorMatrix proj_pm(const UnitVector3& nu, Sign s);
// Same projection without the unit check (hot loops, trusted normals).
SpinorMatrix proj_pm_unchecked(const Vec3& nu, int sign);
// Projection on the parallel surface expressed through the normal of Sigma at
// the base point: P^eps_{+/-}(x) = P_{-/+}(x_Sigma).
SpinorMatrix proj_pm_eps(const UnitVector3& nu_sigma, Sign s);

Vec3 cross(const Vec3& a, const Vec3& b);

}  // namespace dshell
