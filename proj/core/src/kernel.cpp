#include "diracshell/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace dshell {

cplx branch_sqrt(cplx z, double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("branch_sqrt: mass must be non-negative");
  if (std::abs(z - m) < 1e-10 || std::abs(z + m) < 1e-10)
    throw std::domain_error("branch_sqrt: z is a branch point +-m");
  const cplx w = z * z - m * m;
  if (std::abs(z.imag()) <= 1e-300 && std::abs(z.real()) >= m)
    throw std::domain_error("branch_sqrt: z lies in the essential spectrum");
  cplx k = std::sqrt(w);
  if (k.imag() <= 0.0) k = -k;
  return k;
}

SpectralPoint::SpectralPoint(cplx z_, double m_) : z(z_), m(m_), k(branch_sqrt(z_, m_)) {}

SpectralPoint real_axis_point(double E, double m) {
  if (std::abs(std::abs(E) - m) < 1e-10) throw std::domain_error("real_axis_point: z is a branch point +-m");
  SpectralPoint sp;
  sp.z = E;
  sp.m = m;
  if (std::abs(E) < m)
    sp.k = cplx(0.0, std::sqrt(m * m - E * E));
  else
    sp.k = (E > 0 ? 1.0 : -1.0) * std::sqrt(E * E - m * m);
  return sp;
}

void green_radial(cplx k, double r, cplx& g, cplx& dg_over_r) {
  const cplx e = std::exp(I1 * k * r);
  g = e / (4.0 * M_PI * r);
  // g' = g (ik - 1/r)
  dg_over_r = g * (I1 * k - 1.0 / r) / r;
}

SpinorMatrix phi(const SpectralPoint& sp, const Vec3& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::domain_error("phi: x must be nonzero");
  const cplx g = std::exp(I1 * sp.k * r) / (4.0 * M_PI * r);
  const cplx c = (1.0 - I1 * sp.k * r) / (r * r);
  SpinorMatrix out = (I1 * c) * alpha_dot(x);
  out.diagonal().array() += sp.z;
  out(0, 0) += sp.m;
  out(1, 1) += sp.m;
  out(2, 2) -= sp.m;
  out(3, 3) -= sp.m;
  return g * out;
}

KernelSplit kernel_split(const SpectralPoint& sp, const Vec3& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::domain_error("kernel_split: x must be nonzero");
  KernelSplit s;
  s.strong = (I1 / (4.0 * M_PI * r * r * r)) * alpha_dot(x);
  s.weak = phi(sp, x) - s.strong;
  return s;
}

}  // namespace dshell
