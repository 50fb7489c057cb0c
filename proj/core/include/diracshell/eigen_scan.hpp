// Real-energy scan of the MIT boundary system Lambda_+(E) on Omega_+ and the
// s-wave MIT eigenvalue condition of a ball.
#pragma once

#include <vector>

#include "diracshell/potential_ops.hpp"

namespace dshell {

struct ScanOptions {
  AssemblyOptions assembly;
  double dip_condition = 1e10;  // condition number marking E as (numerically) in the spectrum
  double refine_tol = 1e-10;    // energy tolerance of the minimum search
};

struct ScanPoint {
  double E = 0.0;
  double smin = 0.0;  // smallest singular value over all modes
  double smax = 0.0;  // largest singular value over all modes
  int mode = -1;      // mode index attaining smin (-1 for dense layouts)
};

struct EigenDip {
  double E = 0.0;
  double smin = 0.0;
  double condition = 0.0;
  int mode = -1;
};

struct EigenScan {
  std::vector<ScanPoint> grid;
  std::vector<EigenDip> dips;       // refined minima with condition >= dip_condition
  std::vector<EigenDip> minima;     // all refined local minima
};

// Singular values of Lambda_+ at real energy E (outgoing branch for |E| > m).
ScanPoint lambda_singular_values(const SurfaceQuadrature& s, double m, double E, const AssemblyOptions& opt);

// Scans E over grid (points with |E| = m are rejected), refines every local
// minimum by golden-section search restricted to the minimizing mode.
EigenScan mit_eigen_scan(const SurfaceQuadrature& s, double m, const std::vector<double>& grid,
                         const ScanOptions& opt = {});

// Uniform grid on (lo, hi) of n points avoiding |E| = m by at least gap.
std::vector<double> scan_grid(double lo, double hi, int n, double m, double gap = 1e-6);

// (E + m) j0(pR) - p j1(pR), p = sqrt(E^2 - m^2): zero at the s-wave MIT
// eigenvalues of the ball of radius R (E > m branch).
double ball_swave_condition(double E, double m, double R);
// Roots of ball_swave_condition in (lo, hi) by sign change and bisection.
std::vector<double> ball_swave_eigenvalues(double m, double R, double lo, double hi);

}  // namespace dshell
