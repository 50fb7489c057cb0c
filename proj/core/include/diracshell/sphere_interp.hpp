// Band-limited interpolation of node densities on the Gauss x uniform grid of
// S^2 (hyperinterpolation onto spherical harmonics of degree <= N-1).
//
// For a ring c and an integer azimuthal frequency n, the grid function
// e^{i n phi_d} on ring c interpolates to
//   I_{c,n}(theta, phi) = g_c e^{i n phi} sum_{l=|n|}^{L} P_l^n(cos theta) P_l^n(cos theta_c),
// with P_l^n normalized on [-1, 1] and g_c the Gauss weight of ring c.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "diracshell/clifford.hpp"

namespace dshell {

// Normalized associated Legendre values P_l^n(x) for l = n..L, with
// int_{-1}^{1} (P_l^n)^2 dx = 1 (no Condon-Shortley phase).
void normalized_legendre_column(int L, int n, double x, double* out);

class RingInterpolator {
 public:
  RingInterpolator() = default;
  RingInterpolator(const std::vector<double>& ring_cos, const std::vector<double>& ring_gw);

  int rings() const { return static_cast<int>(ring_cos_.size()); }
  int degree() const { return L_; }

  // R(q, c) = g_c sum_l P_l^n(x_q) P_l^n(cos theta_c) for n = |n| <= L.
  // Returns an empty (Q x N zero) matrix contribution when |n| > L.
  Eigen::MatrixXd radial(int n, const std::vector<double>& xq) const;

  // Interpolant of a scalar node function (ring-major, 2N per ring) at u.
  cplx evaluate(const Eigen::VectorXcd& f, const Vec3& u) const;

  // Spherical-harmonic coefficients of interpolated node data. fhat holds the
  // azimuthal coefficients, row c * ncomp + comp, column n + L (n = -L..L).
  // Returns one ((L + 1 - |n|) x ncomp) matrix per n.
  std::vector<Eigen::MatrixXcd> harmonic_coefficients(const Eigen::MatrixXcd& fhat, int ncomp) const;
  // Values at points (x = cos theta, phi): Q x ncomp.
  Eigen::MatrixXcd synthesize(const std::vector<Eigen::MatrixXcd>& coeffs, const std::vector<double>& xq,
                              const std::vector<double>& phiq) const;

 private:
  std::vector<double> ring_cos_;
  std::vector<double> ring_gw_;
  int L_ = 0;
  std::vector<Eigen::MatrixXd> pc_;  // per |n|: N x (L+1-n), scaled by g_c
};

// Sectoral recurrence helper: fills P[q][l-n] for all q at fixed n.
Eigen::MatrixXd legendre_block(int L, int n, const std::vector<double>& xq);

}  // namespace dshell
