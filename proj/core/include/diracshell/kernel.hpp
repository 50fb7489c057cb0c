// Fundamental solution of D_m - z and its split into a bounded-times-1/r part
// and the odd homogeneous part i alpha.x / (4 pi |x|^3).
#pragma once

#include "diracshell/clifford.hpp"

namespace dshell {

// k = sqrt(z^2 - m^2) on the branch Im k > 0.
cplx branch_sqrt(cplx z, double m);

struct SpectralPoint {
  cplx z;
  double m = 1.0;
  cplx k;

  SpectralPoint() = default;
  SpectralPoint(cplx z_, double m_);
  // Same spectral parameter with a different mass.
  SpectralPoint with_mass(double m_) const { return SpectralPoint(z, m_); }
  SpectralPoint conj() const { return SpectralPoint(std::conj(z), m); }
};

// Limit of the branch for z on the real axis with |z| > m, approached from
// Im z > 0 (outgoing): k = sign(Re z) sqrt(z^2 - m^2). Used only by the
// eigenvalue scan, which works on real energies.
SpectralPoint real_axis_point(double E, double m);

// e^{ik|x|}/(4 pi |x|) (z + m beta + (1 - ik|x|) i alpha.x / |x|^2).
SpinorMatrix phi(const SpectralPoint& sp, const Vec3& x);

struct KernelSplit {
  SpinorMatrix weak;
  SpinorMatrix strong;
};

KernelSplit kernel_split(const SpectralPoint& sp, const Vec3& x);

// Scalar Green function g = e^{ik r}/(4 pi r) and its radial data
// (phi = (z + m beta) g - i alpha.grad g). Returned as g and g'(r)/r.
void green_radial(cplx k, double r, cplx& g, cplx& dg_over_r);

}  // namespace dshell
