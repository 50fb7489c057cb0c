// Target-centred polar quadrature on the parameter sphere.
//
// Points u(theta', phi') = cos(theta') u_t + sin(theta') (cos(phi') e1 + sin(phi') e2)
// with graded Gauss-Legendre panels in theta' and an even trapezoid rule in
// phi'. The even count pairs phi' with phi' + pi, so the odd 1/theta' part of a
// principal-value integrand cancels exactly on every circle.
#pragma once

#include <vector>

#include "diracshell/clifford.hpp"

namespace dshell {

struct PolarOptions {
  int pts_per_panel = 10;
  double width_factor = 6.0;  // widest panel = width_factor / L
  double truncation = 40.0;   // cut the rule where Im(k) * distance exceeds this
  int phi_extra = 4;          // n_phi = 2 L + phi_extra (rounded up to even)
};

struct PolarRule {
  std::vector<Vec3> u;
  std::vector<double> w;          // solid-angle weights sin(theta') dtheta' dphi'
  std::vector<double> cos_theta;  // global cos(theta) of u
  std::vector<double> phi;        // global azimuth of u
  int size() const { return static_cast<int>(u.size()); }
};

// Panel breakpoints on [0, theta_max]: first panel of width ~ min(d, 1/kappa,
// widest), doubling up to the widest panel.
std::vector<double> theta_breaks(double d_param, double kappa_param, int L, double theta_max,
                                 const PolarOptions& opt);

PolarRule make_polar_rule(const Vec3& anchor, double d_param, double kappa_param, int L, double theta_max,
                          const PolarOptions& opt);

// Tangent frame at u used by the polar rule: (d/dtheta, d/dphi) away from the
// poles, a fixed frame at the poles.
void polar_frame(const Vec3& u, Vec3& e1, Vec3& e2);

}  // namespace dshell
