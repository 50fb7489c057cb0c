// Least-squares log-log rate fits.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dshell {

struct RateFit {
  std::vector<std::pair<double, double>> points;  // (x, value)
  double slope = 0.0;
  double intercept = 0.0;  // of log(value) = intercept + slope log(x)
  double r2 = 0.0;
  double band_lo = 0.0, band_hi = 0.0;  // accepted slope range
  double min_r2 = 0.9;
  bool pass = false;
};

// Fits log(value) against log(x). Needs at least 4 points with positive x and
// value; throws std::invalid_argument otherwise. pass is left false until a
// band is applied.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

// Applies [lo, hi] and the R^2 floor; returns fit.pass.
bool apply_band(RateFit& fit, double lo, double hi, double min_r2 = 0.9);

std::string describe(const RateFit& fit);

}  // namespace dshell
