#include "diracshell/ratefit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dshell {

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw std::invalid_argument("fit_rate: need at least 4 points");
  RateFit f;
  f.points = points;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& [x, v] : points) {
    if (!(x > 0.0) || !(v > 0.0)) throw std::invalid_argument("fit_rate: nonpositive point");
    const double lx = std::log(x), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw std::invalid_argument("fit_rate: degenerate abscissae");
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double my = sy / n;
  for (const auto& [x, v] : points) {
    const double ly = std::log(v);
    const double r = ly - (f.intercept + f.slope * std::log(x));
    ss_res += r * r;
    ss_tot += (ly - my) * (ly - my);
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

bool apply_band(RateFit& fit, double lo, double hi, double min_r2) {
  fit.band_lo = lo;
  fit.band_hi = hi;
  fit.min_r2 = min_r2;
  fit.pass = fit.slope >= lo && fit.slope <= hi && fit.r2 >= min_r2;
  return fit.pass;
}

std::string describe(const RateFit& fit) {
  std::ostringstream os;
  os.precision(4);
  os << "slope " << fit.slope << " (band [" << fit.band_lo << ", " << fit.band_hi << "]), R^2 " << fit.r2;
  return os.str();
}

}  // namespace dshell
