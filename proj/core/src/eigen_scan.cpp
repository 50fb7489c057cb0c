#include "diracshell/eigen_scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dshell {

ScanPoint lambda_singular_values(const SurfaceQuadrature& s, double m, double E, const AssemblyOptions& opt) {
  const SpectralPoint sp = real_axis_point(E, m);
  const BlockOperator lam = lambda_pm(assemble_cauchy(s, sp, opt), s, Sign::Plus);
  ScanPoint p;
  p.E = E;
  p.smin = 1e300;
  for (int k = 0; k < lam.nmodes(); ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lam.block(k));
    const auto& sv = svd.singularValues();
    p.smax = std::max(p.smax, sv[0]);
    if (sv[sv.size() - 1] < p.smin) {
      p.smin = sv[sv.size() - 1];
      p.mode = lam.layout.modal() ? lam.layout.modes[k] : -1;
    }
  }
  return p;
}

namespace {

ScanPoint at_mode(const SurfaceQuadrature& s, double m, double E, int mode, const ScanOptions& opt) {
  AssemblyOptions a = opt.assembly;
  if (mode >= 0) a.modes = {mode};
  ScanPoint p = lambda_singular_values(s, m, E, a);
  return p;
}

}  // namespace

EigenScan mit_eigen_scan(const SurfaceQuadrature& s, double m, const std::vector<double>& grid,
                         const ScanOptions& opt) {
  EigenScan out;
  for (double E : grid) {
    if (std::abs(std::abs(E) - m) < 1e-9) throw std::invalid_argument("mit_eigen_scan: grid point at |E| = m");
    out.grid.push_back(lambda_singular_values(s, m, E, opt.assembly));
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (size_t i = 1; i + 1 < out.grid.size(); ++i) {
    const ScanPoint& c = out.grid[i];
    if (!(c.smin <= out.grid[i - 1].smin && c.smin <= out.grid[i + 1].smin)) continue;
    double a = out.grid[i - 1].E, b = out.grid[i + 1].E;
    // Do not refine across the band edges.
    if ((a < -m) != (b < -m) || (a < m) != (b < m)) continue;
    const int mode = c.mode;
    auto f = [&](double E) { return at_mode(s, m, E, mode, opt).smin; };
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > opt.refine_tol) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = f(x2);
      }
    }
    const ScanPoint p = at_mode(s, m, 0.5 * (a + b), mode, opt);
    EigenDip d;
    d.E = p.E;
    d.smin = p.smin;
    d.condition = p.smax / p.smin;
    d.mode = mode;
    out.minima.push_back(d);
    if (d.condition >= opt.dip_condition) out.dips.push_back(d);
  }
  return out;
}

std::vector<double> scan_grid(double lo, double hi, int n, double m, double gap) {
  if (n < 3) throw std::invalid_argument("scan_grid: need at least 3 points");
  std::vector<double> g;
  for (int i = 0; i < n; ++i) {
    double E = lo + (hi - lo) * (i + 0.5) / n;
    if (std::abs(std::abs(E) - m) < gap) E += (E > 0 ? 1 : -1) * (std::abs(E) < m ? -gap : gap);
    g.push_back(E);
  }
  return g;
}

double ball_swave_condition(double E, double m, double R) {
  const double p = std::sqrt(E * E - m * m);
  const double x = p * R;
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  return (E + m) * j0 - p * j1;
}

std::vector<double> ball_swave_eigenvalues(double m, double R, double lo, double hi) {
  std::vector<double> roots;
  lo = std::max(lo, m * (1.0 + 1e-9));
  const int n = 4000;
  double a = lo, fa = ball_swave_condition(a, m, R);
  for (int i = 1; i <= n; ++i) {
    const double b = lo + (hi - lo) * i / n;
    const double fb = ball_swave_condition(b, m, R);
    if (fa * fb < 0.0) {
      double x0 = a, x1 = b, f0 = fa;
      for (int it = 0; it < 200 && x1 - x0 > 1e-15; ++it) {
        const double xm = 0.5 * (x0 + x1), fm = ball_swave_condition(xm, m, R);
        if (f0 * fm <= 0.0) {
          x1 = xm;
        } else {
          x0 = xm;
          f0 = fm;
        }
      }
      roots.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace dshell
