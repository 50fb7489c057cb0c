// Closed analytic surfaces on a Gauss-Legendre x uniform product grid, their
// parallel surfaces, the tubular shell quadrature and the eps-transport map.
//
// Sign convention: the Weingarten map is W = -d(nu), so a sphere of radius R
// has both principal curvatures equal to -1/R and det(1 - eps W) = (1+eps/R)^2.
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "diracshell/clifford.hpp"

namespace dshell {

// Analytic parametrization over the unit sphere: x(u) = diag(a,b,c) u + eps nu(u).
struct ChartDescriptor {
  Vec3 semiaxes{1.0, 1.0, 1.0};
  double eps = 0.0;  // normal offset from the base surface (0 for Sigma itself)
  bool sphere = true;

  bool axisymmetric() const { return semiaxes[0] == semiaxes[1]; }
  double max_abs_curvature() const;  // of the base surface (eps = 0)
  std::string describe() const;
  bool same_base(const ChartDescriptor& o) const { return semiaxes == o.semiaxes && sphere == o.sphere; }
};

// Geometry at a point of the chart, u a unit vector on S^2.
struct ChartPoint {
  Vec3 x;     // position
  Vec3 nu;    // unit normal of the base surface, pointing out of Omega_+
  double jac; // area density with respect to the solid angle on S^2
  Mat3 W;     // Weingarten map of the (offset) surface, tangent part only
};

ChartPoint eval_chart(const ChartDescriptor& chart, const Vec3& u);

// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

struct SurfaceQuadrature {
  // Per node, ring-major: node i = a * (2N) + b, a polar ring, b azimuth index.
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  std::vector<Vec3> normals;  // stored normal: nu on Sigma, N^eps = -nu on a parallel surface
  std::vector<Mat3> weingarten;
  ChartDescriptor chart_id;
  int resolution = 0;  // N: N polar rings, 2N azimuthal points

  // Parametrization data.
  std::vector<Vec3> dirs;         // u_i on S^2
  std::vector<double> s2_weights; // solid-angle weights
  std::vector<double> ring_cos;   // cos(theta_a), a = 0..N-1 (theta increasing)
  std::vector<double> ring_gw;    // Gauss weight of ring a
  int orientation = +1;           // +1: normals = nu, -1: normals = -nu

  int size() const { return static_cast<int>(nodes.size()); }
  int rings() const { return resolution; }
  int azimuth() const { return 2 * resolution; }
  double phi(int b) const;
  // Normal of the base surface transported to this node (always out of Omega_+).
  Vec3 nu(int i) const { return double(orientation) * normals[i]; }
  double total_area() const;
  std::pair<double, double> principal_curvatures(int i) const;
  double max_abs_curvature() const;
};

SurfaceQuadrature make_sphere(double radius, int N);
SurfaceQuadrature make_ellipsoid(const Vec3& semiaxes, int N);
SurfaceQuadrature parallel_surface(const SurfaceQuadrature& base, double eps);

// Discrete L2 norm (sum_i w_i |f_i|^2)^(1/2) of a density stored node-major
// (4 entries per node).
double density_norm(const SurfaceQuadrature& s, const Eigen::VectorXcd& f);

// T_eps f = f o p^{-1} / det(1 - eps W) and its inverse.
Eigen::VectorXcd transform_eps(const SurfaceQuadrature& sigma, const SurfaceQuadrature& sigma_eps,
                               const Eigen::VectorXcd& f);
Eigen::VectorXcd transform_eps_inv(const SurfaceQuadrature& sigma, const SurfaceQuadrature& sigma_eps,
                                   const Eigen::VectorXcd& f);

struct ShellQuadrature {
  SurfaceQuadrature base;
  std::vector<double> t;         // radial nodes in (0, eps)
  std::vector<double> t_weights;
  std::vector<double> jacobians; // det(1 - t W(x_i)), index i * n_radial + r
  double epsilon = 0.0;

  int n_radial() const { return static_cast<int>(t.size()); }
  int size() const { return base.size() * n_radial(); }
  Vec3 point(int i, int r) const { return base.nodes[i] + t[r] * base.nu(i); }
  double weight(int i, int r) const { return base.weights[i] * jacobians[i * n_radial() + r] * t_weights[r]; }
  double volume() const;
};

ShellQuadrature shell_quadrature(const SurfaceQuadrature& base, double eps, int n_radial);

// Largest admissible offset, 0.5 / max |curvature|.
double eps_guard(const SurfaceQuadrature& base);

// CSV mesh dump: header plus one row per node with 10 columns
// index,x,y,z,weight,nx,ny,nz,kappa1,kappa2.
void write_mesh_csv(const SurfaceQuadrature& s, std::ostream& os);

}  // namespace dshell
