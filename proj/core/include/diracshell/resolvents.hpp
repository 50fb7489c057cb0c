// Resolvents by Krein-type boundary formulas: MIT bag operators on Omega_+,
// Omega_-, Omega_-^eps and the shell U^eps, the Lorentz-scalar confining
// operator D_L, and the large-mass operator D_m + M beta 1_{U^eps}.
//
// Single surface (Omega_+, Omega_-, Omega_-^eps, D_L):
//   u = w - Phi Lambda_+^{-1} t w,   w = (D_m - z)^{-1} f.
// Shell at mass m + M:
//   u = w - (Phi rho + Phi^eps rho^eps),  (rho, rho^eps) = S^{-1}(t_Sigma w, t_eps w).
// Large mass: unknown traces (phi, phi^eps, psi, psi^eps) solve
//   Upsilon x = Gamma R_MIT f,   Upsilon = I - K,   K = [[0, A], [B, 0]],
// with A = diag(A_m P_-, A_m^eps P_+) and B = A_{m+M} diag(P_+, P_-).
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "diracshell/potential_ops.hpp"
#include "diracshell/sources.hpp"

namespace dshell {

enum class Domain { OmegaPlus, OmegaMinus, OmegaMinusEps, Shell };
enum class LorentzMode { GlobalKrein, MitDirectSum };

std::string domain_name(Domain d);

struct ResolventOptions {
  AssemblyOptions assembly;
  double max_condition = 1e12;
};

// Sum of the free resolvents of the sources at x.
Spinor free_field(const std::vector<SourcePtr>& f, const SpectralPoint& sp, const Vec3& x);
// Free field at the nodes of s (node-major). Single-mode sources are evaluated
// on one meridian and rotated.
Eigen::VectorXcd free_trace(const SurfaceQuadrature& s, const std::vector<SourcePtr>& f, const SpectralPoint& sp);

std::vector<SourcePtr> sources_in(const std::vector<SourcePtr>& f, Region r);

// Lambda_+ on one surface with its inverse; layer fields of densities.
class SurfaceSolver {
 public:
  SurfaceSolver(const SurfaceQuadrature& s, const SpectralPoint& sp, const ResolventOptions& opt = {});
  const SurfaceQuadrature& surface() const { return surf_; }
  const SpectralPoint& point() const { return sp_; }
  const BlockOperator& lambda_plus() const { return lambda_; }
  const BlockOperator& lambda_inv() const { return inv_; }
  double condition() const { return cond_; }
  Eigen::VectorXcd density(const Eigen::VectorXcd& trace) const { return inv_.apply(trace); }
  std::vector<Spinor> field(const std::vector<Vec3>& pts, const Eigen::VectorXcd& rho) const;
  // Poincare-Steklov operator: A_m (Omega_+ side) or A_m^eps (outer side).
  BlockOperator ps(Sign side) const;

 private:
  SurfaceQuadrature surf_;
  SpectralPoint sp_;
  ResolventOptions opt_;
  BlockOperator lambda_, inv_;
  double cond_ = 0.0;
};

struct ResolventResult {
  std::vector<Spinor> values;      // u at the targets (zero outside the domain)
  std::vector<Spinor> free_part;   // w at the targets
  std::vector<Spinor> correction;  // values - free_part
  double condition = 0.0;
};

// R_MIT^domain f at targets. surf is Sigma for Omega_+/Omega_-, Sigma^eps for
// Omega_-^eps. Sources outside the domain are ignored (f restricted), targets
// outside the domain give zero (extension by zero).
ResolventResult mit_resolvent(Domain domain, const SurfaceSolver& solver, const std::vector<SourcePtr>& f,
                              const EvaluationSet& targets);
ResolventResult mit_resolvent(Domain domain, const SurfaceQuadrature& surf, const SpectralPoint& sp,
                              const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                              const ResolventOptions& opt = {});

struct ShellResult : ResolventResult {
  Eigen::VectorXcd trace_sigma;  // t_Sigma u
  Eigen::VectorXcd trace_eps;    // t_{Sigma^eps} u
  double trace_norm = 0.0;       // L2 norm over Sigma and Sigma^eps
};

// Shell MIT resolvent at mass sp.m (= m + M); system from ps_shell.
ShellResult mit_shell_resolvent(const ShellSystem& sys, const SurfaceQuadrature& sigma,
                                const SurfaceQuadrature& sigma_eps, const SpectralPoint& sp,
                                const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                                const ResolventOptions& opt = {});

ResolventResult lorentz_resolvent(const SurfaceSolver& solver, const std::vector<SourcePtr>& f,
                                  const EvaluationSet& targets, LorentzMode mode);

// Large-mass operator D_m + M beta 1_{U^eps}: assembled once, applied to many sources.
class PerturbedPlan {
 public:
  PerturbedPlan(const SurfaceQuadrature& sigma, cplx z, double m, double M, double eps,
                const ResolventOptions& opt = {});

  const SurfaceQuadrature& sigma() const { return sigma_; }
  const SurfaceQuadrature& sigma_eps() const { return sigma_eps_; }
  double mass() const { return m_; }
  double big_mass() const { return M_; }
  double eps() const { return eps_; }
  const SurfaceSolver& inner() const { return *inner_; }   // Sigma, mass m
  const SurfaceSolver& outer() const { return *outer_; }   // Sigma^eps, mass m
  const ShellSystem& shell() const { return shell_; }      // mass m + M
  const BlockOperator& upsilon() const { return upsilon_; }
  const BlockOperator& upsilon_inv() const { return upsilon_inv_; }
  const BlockOperator& coupling() const { return k_; }    // K
  // Xi = (I - A B - B A)^{-1} on the pair space over (Sigma, Sigma^eps).
  BlockOperator xi() const;
  // Weights of the pair space (Sigma rings then Sigma^eps rings).
  std::vector<double> pair_weights() const;
  double upsilon_condition() const { return upsilon_cond_; }

  struct Result {
    std::vector<Spinor> values;      // R_M^eps f
    std::vector<Spinor> mit_part;    // R_MIT^eps f (direct sum of three MIT resolvents)
    std::vector<Spinor> correction;  // E_M^eps Upsilon^{-1} Gamma R_MIT^eps f
    Eigen::VectorXcd rhs;            // Gamma R_MIT^eps f
    Eigen::VectorXcd traces;         // (phi, phi^eps, psi, psi^eps)
  };
  Result solve(const std::vector<SourcePtr>& f, const EvaluationSet& targets) const;

 private:
  SurfaceQuadrature sigma_, sigma_eps_;
  double m_, M_, eps_;
  SpectralPoint sp_m_, sp_big_;
  ResolventOptions opt_;
  std::unique_ptr<SurfaceSolver> inner_, outer_;
  ShellSystem shell_;
  BlockOperator a_pair_, b_pair_, k_, upsilon_, upsilon_inv_;
  double upsilon_cond_ = 0.0;
};

// Independent cross-check of R_M^eps: the full traces G on Sigma and G^eps on
// Sigma^eps (continuous across both surfaces) solve the stacked Calderon
// conditions of the three regions, in the least-squares sense; the field is
// then recovered from the Green representation in each region.
ResolventResult transmission_resolvent(const SurfaceQuadrature& sigma, cplx z, double m, double M, double eps,
                                       const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                                       const ResolventOptions& opt = {});

// free_part holds R_MIT^eps f, correction the Krein term.
ResolventResult perturbed_resolvent(const SurfaceQuadrature& sigma, cplx z, double m, double M, double eps,
                                    const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                                    const ResolventOptions& opt = {});

}  // namespace dshell
