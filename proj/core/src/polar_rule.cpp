#include "diracshell/polar_rule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diracshell/geometry.hpp"

namespace dshell {

void polar_frame(const Vec3& u, Vec3& e1, Vec3& e2) {
  const double s = std::hypot(u[0], u[1]);
  if (s < 1e-12) {
    e1 = Vec3(1.0, 0.0, 0.0);
    e2 = u.cross(e1).normalized();
    e1 = e2.cross(u).normalized();
    return;
  }
  const double cp = u[0] / s, sp = u[1] / s;
  e1 = Vec3(u[2] * cp, u[2] * sp, -s);
  e2 = Vec3(-sp, cp, 0.0);
}

std::vector<double> theta_breaks(double d_param, double kappa_param, int L, double theta_max,
                                 const PolarOptions& opt) {
  if (!(theta_max > 0.0)) throw std::invalid_argument("theta_breaks: empty range");
  const double widest = std::min(opt.width_factor / std::max(L, 1), 0.5);
  double w0 = widest;
  if (kappa_param > 0.0) w0 = std::min(w0, 1.0 / kappa_param);
  if (d_param > 0.0) w0 = std::min(w0, d_param);
  w0 = std::max(w0, 1e-6 * widest);
  std::vector<double> b{0.0};
  double w = w0;
  while (b.back() < theta_max) {
    double next = b.back() + w;
    // Avoid a sliver panel at the end.
    if (next > theta_max || theta_max - next < 0.25 * w) next = theta_max;
    b.push_back(next);
    w = std::min(2.0 * w, widest);
  }
  return b;
}

PolarRule make_polar_rule(const Vec3& anchor, double d_param, double kappa_param, int L, double theta_max,
                          const PolarOptions& opt) {
  const std::vector<double> br = theta_breaks(d_param, kappa_param, L, theta_max, opt);
  std::vector<double> gx, gw;
  gauss_legendre(opt.pts_per_panel, gx, gw);
  int nphi = 2 * L + opt.phi_extra;
  if (nphi % 2) ++nphi;
  nphi = std::max(nphi, 8);
  Vec3 e1, e2;
  polar_frame(anchor, e1, e2);
  std::vector<double> cph(nphi), sph(nphi);
  for (int p = 0; p < nphi; ++p) {
    const double a = 2.0 * M_PI * p / nphi;
    cph[p] = std::cos(a);
    sph[p] = std::sin(a);
  }
  PolarRule r;
  const size_t total = (br.size() - 1) * gx.size() * nphi;
  r.u.reserve(total);
  r.w.reserve(total);
  r.cos_theta.reserve(total);
  r.phi.reserve(total);
  for (size_t k = 0; k + 1 < br.size(); ++k) {
    const double a = br[k], b = br[k + 1];
    for (size_t g = 0; g < gx.size(); ++g) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * gx[g];
      const double wt = 0.5 * (b - a) * gw[g] * std::sin(t) * 2.0 * M_PI / nphi;
      const double ct = std::cos(t), st = std::sin(t);
      for (int p = 0; p < nphi; ++p) {
        Vec3 u = ct * anchor + st * (cph[p] * e1 + sph[p] * e2);
        u.normalize();
        r.u.push_back(u);
        r.w.push_back(wt);
        r.cos_theta.push_back(std::max(-1.0, std::min(1.0, u[2])));
        r.phi.push_back(std::atan2(u[1], u[0]));
      }
    }
  }
  return r;
}

}  // namespace dshell
