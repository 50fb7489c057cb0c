// Discrete layer potentials, Cauchy operators, Lambda operators, volume
// potentials and Poincare-Steklov operators.
//
// Conventions. nu is the normal of Sigma pointing out of Omega_+; on a
// parallel surface nu is transported from Sigma (SurfaceQuadrature::nu), so the
// side "+" of any surface is the side containing Omega_+.
//   C_{+/-} = -/+ (i/2) alpha.nu + C,   Lambda_{+/-} = beta/2 +/- C.
// Layer integrals use band-limited interpolation of the density and
// target-centred polar quadrature; the Cauchy principal value comes from the
// even azimuthal rule around each node.
#pragma once

#include <functional>
#include <vector>

#include "diracshell/geometry.hpp"
#include "diracshell/modal.hpp"
#include "diracshell/polar_rule.hpp"
#include "diracshell/sphere_interp.hpp"

namespace dshell {

enum class PVMode { Polar, Punctured, Calibrated };

struct AssemblyOptions {
  PVMode pv = PVMode::Polar;
  PolarOptions polar;
  bool use_modes = true;   // block-diagonalize on axisymmetric surfaces
  std::vector<int> modes;  // restrict to these mode indices (empty: all)
};

// Mode layout used for operators on surf under opt.
ModeLayout layout_for(const SurfaceQuadrature& surf, const AssemblyOptions& opt);
// Number of "rows" of the layout: rings (modal) or nodes (dense).
int layout_rows(const SurfaceQuadrature& surf, const ModeLayout& layout);
// Per-row node weights (ring weight or node weight) for weighted norms.
std::vector<double> layout_weights(const SurfaceQuadrature& surf, const ModeLayout& layout);
// Representative node index of layout row r.
int layout_node(const SurfaceQuadrature& surf, const ModeLayout& layout, int r);

// Closest point parameter of x on the chart (exact for spheres and their
// parallel surfaces).
Vec3 closest_param(const ChartDescriptor& chart, const Vec3& x);

// Integrals over a source surface for one target, per integer azimuthal
// frequency: A[n](4 s + s', c) = sum_d int phi(x - y)_{s s'} c_{(c,d)}(y) e^{i n phi_d}.
class LayerIntegrator {
 public:
  LayerIntegrator(const SurfaceQuadrature& src, const SpectralPoint& sp, const PolarOptions& opt);
  std::vector<Eigen::MatrixXcd> integrals(const Vec3& x, const Vec3& anchor, double dist,
                                          const std::vector<int>& nlist) const;
  // Sum over the polar rule of phi(x - y) g(u) dS(u) for an analytic density g.
  Spinor integrate_function(const Vec3& x, const Vec3& anchor, double dist,
                            const std::function<Spinor(const Vec3& u)>& g) const;
  // Value at x of the layer potential of a node density.
  Spinor apply(const Vec3& x, const Vec3& anchor, double dist, const Eigen::MatrixXcd& fhat) const;
  // Azimuthal Fourier coefficients fhat(4 c + s, n + L) of a node density.
  Eigen::MatrixXcd density_coefficients(const Eigen::VectorXcd& f) const;

  const SurfaceQuadrature& source() const { return src_; }

 private:
  PolarRule rule(const Vec3& anchor, double dist) const;
  const SurfaceQuadrature& src_;
  SpectralPoint sp_;
  PolarOptions opt_;
  RingInterpolator interp_;
  double rho_min_;
};

// Layer operator from src densities to the nodes of tgt (tgt may equal src, in
// which case the result is the principal-value Cauchy operator).
BlockOperator assemble_surface_layer(const SurfaceQuadrature& src, const SurfaceQuadrature& tgt,
                                     const SpectralPoint& sp, const AssemblyOptions& opt = {});

// Dense layer operator Phi from src node densities to arbitrary off-surface points.
BlockOperator assemble_layer(const SurfaceQuadrature& src, const std::vector<Vec3>& targets, const SpectralPoint& sp,
                             const AssemblyOptions& opt = {});
// Phi[f] at points without forming the matrix.
std::vector<Spinor> layer_apply(const SurfaceQuadrature& src, const std::vector<Vec3>& targets,
                                const SpectralPoint& sp, const Eigen::VectorXcd& f, const AssemblyOptions& opt = {});

BlockOperator assemble_cauchy(const SurfaceQuadrature& surf, const SpectralPoint& sp,
                              const AssemblyOptions& opt = {});

// Pointwise operators on surf in the given layout.
BlockOperator surface_pointwise(const SurfaceQuadrature& surf, const ModeLayout& layout,
                                const std::function<SpinorMatrix(int node)>& m);
BlockOperator alpha_nu_op(const SurfaceQuadrature& surf, const ModeLayout& layout);
BlockOperator beta_op(const SurfaceQuadrature& surf, const ModeLayout& layout);
// P_{+/-}(nu) with nu the transported normal of Sigma.
BlockOperator proj_op(const SurfaceQuadrature& surf, const ModeLayout& layout, Sign s);

// Side-resolution table for the shell U^eps: the shell lies on the "-" side of
// Sigma and on the "+" side of Sigma^eps.
inline Sign shell_side_on_sigma() { return Sign::Minus; }
inline Sign shell_side_on_sigma_eps() { return Sign::Plus; }

BlockOperator trace_limits(const BlockOperator& cauchy, const SurfaceQuadrature& surf, Sign side);
BlockOperator lambda_pm(const BlockOperator& cauchy, const SurfaceQuadrature& surf, Sign s);

// Volume Newton potential sum_j v_j phi(t - y_j) f_j.
struct VolumeQuadrature {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(points.size()); }
};

// Spherical product rule on a ball (Gauss-Legendre radial, Gauss x uniform angular).
VolumeQuadrature ball_quadrature(const Vec3& center, double radius, int n_radial, int n_angular);
VolumeQuadrature shell_volume_quadrature(const ShellQuadrature& shell);

std::vector<Spinor> volume_potential(const VolumeQuadrature& vq, const std::vector<Spinor>& f,
                                     const SpectralPoint& sp, const std::vector<Vec3>& targets);

// Poincare-Steklov operators.
//   ps_fixed  = -P_+ beta Lambda_+^{-1} P_-          on Sigma       (Omega_+ side)
//   ps_eps    = -P_- beta (Lambda_+^eps)^{-1} P_+    on Sigma^eps   (Omega_-^eps side)
BlockOperator ps_fixed(const BlockOperator& lambda_plus, const SurfaceQuadrature& sigma);
BlockOperator ps_eps(const BlockOperator& lambda_plus_eps, const SurfaceQuadrature& sigma_eps);
BlockOperator ps_fixed(const SurfaceQuadrature& sigma, const SpectralPoint& sp, const AssemblyOptions& opt = {});
BlockOperator ps_eps(const SurfaceQuadrature& sigma_eps, const SpectralPoint& sp, const AssemblyOptions& opt = {});

// Two-surface boundary system of the shell between Sigma and Sigma^eps at
// mass sp.m:  S = [[Lambda_+^Sigma, X], [Y, Lambda_+^eps]] with X, Y the
// cross-surface layer traces. Densities (rho, rho^eps) = S^{-1}(h, h^eps)
// give u = Phi rho + Phi^eps rho^eps with
//   t_Sigma u = h - beta P_+ rho,   t_eps u = h^eps - beta P_- rho^eps.
struct ShellSystem {
  BlockOperator system;       // S
  BlockOperator system_inv;   // S^{-1}
  BlockOperator ps;           // A_{m+M}: (P_+ h, P_- h^eps) -> (P_- t_Sigma u, P_+ t_eps u)
  BlockOperator cross_x;      // Phi^eps traced on Sigma
  BlockOperator cross_y;      // Phi traced on Sigma^eps
  BlockOperator out_map;      // diag(-beta P_+, -beta P_-)
  double condition = 0.0;
  bool coupled = true;
  int rings_sigma = 0;
};

ShellSystem ps_shell(const SurfaceQuadrature& sigma, const SurfaceQuadrature& sigma_eps, const SpectralPoint& sp,
                     const AssemblyOptions& opt = {}, bool coupled = true);

}  // namespace dshell
