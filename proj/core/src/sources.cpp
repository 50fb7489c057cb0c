#include "diracshell/sources.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dshell {

std::string region_name(Region r) {
  switch (r) {
    case Region::OmegaPlus: return "omega_plus";
    case Region::Shell: return "shell";
    case Region::OmegaMinusEps: return "omega_minus_eps";
  }
  return "?";
}

double normal_coordinate(const ChartDescriptor& sigma, const Vec3& x) {
  ChartDescriptor base = sigma;
  base.eps = 0.0;
  const Vec3 u = closest_param(base, x);
  const ChartPoint cp = eval_chart(base, u);
  const double d = (x - cp.x).norm();
  const Vec3& a = base.semiaxes;
  const double q = std::pow(x[0] / a[0], 2) + std::pow(x[1] / a[1], 2) + std::pow(x[2] / a[2], 2);
  return q < 1.0 ? -d : d;
}

Region classify(const ChartDescriptor& sigma, double eps, const Vec3& x) {
  const double t = normal_coordinate(sigma, x);
  if (t < 0.0) return Region::OmegaPlus;
  if (eps > 0.0 && t < eps) return Region::Shell;
  return Region::OmegaMinusEps;
}

namespace {

cplx expm1c(cplx z) {
  if (std::abs(z) < 1e-3) return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
  return std::exp(z) - 1.0;
}

struct GL16 {
  std::vector<double> x, w;
  GL16() { gauss_legendre(16, x, w); }
};

const GL16& gl16() {
  static const GL16 g;
  return g;
}

// Adds int_a^b of fn over panels no wider than h.
template <class F>
void panel_sum(double a, double b, double h, F&& fn) {
  if (b <= a) return;
  const int np = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  const double step = (b - a) / np;
  const GL16& g = gl16();
  for (int p = 0; p < np; ++p) {
    const double lo = a + p * step;
    for (size_t q = 0; q < g.x.size(); ++q) fn(lo + 0.5 * step * (g.x[q] + 1.0), 0.5 * step * g.w[q]);
  }
}

}  // namespace

void gaussian_potential(cplx k, double sigma, double r, cplx& U, cplx& dU) {
  // (-Lap - k^2) U = g radially: rU(r) = int_0^inf rho g(rho) K(r, rho) drho with
  // K = (e^{-kap|r-rho|} - e^{-kap(r+rho)}) / (2 kap), kap = -ik.
  const cplx kap = -I1 * k;
  const double rmax = 12.0 * sigma;
  const double h = std::min(1.5 * sigma, 3.0 / std::max(1e-300, kap.real()));
  auto g = [&](double rho) { return std::exp(-rho * rho / (2.0 * sigma * sigma)); };
  if (r < 1e-8 * sigma) {
    U = 0.0;
    panel_sum(0.0, rmax, h, [&](double rho, double w) { U += w * rho * g(rho) * std::exp(-kap * rho); });
    dU = 0.0;
    return;
  }
  // I0 = int rho g K, I1 = int rho g dK/dr.
  cplx I0 = 0.0, I1v = 0.0;
  auto add = [&](double rho, double w) {
    const double lo = std::min(r, rho);
    const cplx e = std::exp(-kap * std::abs(r - rho));
    const cplx diff = -e * expm1c(-2.0 * kap * lo);  // e^{-kap|r-rho|} - e^{-kap(r+rho)}
    const double sg = r > rho ? 1.0 : -1.0;
    const cplx dK = 0.5 * (-sg * e + std::exp(-kap * (r + rho)));
    const double wg = w * rho * g(rho);
    I0 += wg * diff / (2.0 * kap);
    I1v += wg * dK;
  };
  const double split = std::min(r, rmax);
  panel_sum(0.0, split, h, add);
  panel_sum(split, rmax, h, add);
  U = I0 / r;
  dU = -U / r + I1v / r;
}

// ---------------------------------------------------------------------------

GaussianSource::GaussianSource(std::vector<Bump> bumps, Region region) : bumps_(std::move(bumps)), region_(region) {
  for (const Bump& b : bumps_)
    if (!(b.sigma > 0.0)) throw std::invalid_argument("GaussianSource: sigma must be positive");
}

Spinor GaussianSource::value(const Vec3& x) const {
  Spinor f = Spinor::Zero();
  for (const Bump& b : bumps_) f += std::exp(-(x - b.center).squaredNorm() / (2 * b.sigma * b.sigma)) * b.amplitude;
  return f;
}

Spinor GaussianSource::free_resolvent(const SpectralPoint& sp, const Vec3& x) const {
  // (D_m - z)^{-1} = (-i alpha.grad + m beta + z)(-Lap + m^2 - z^2)^{-1}.
  Spinor out = Spinor::Zero();
  for (const Bump& b : bumps_) {
    const Vec3 d = x - b.center;
    const double r = d.norm();
    cplx U, dU;
    gaussian_potential(sp.k, b.sigma, r, U, dU);
    SpinorMatrix M = U * (sp.m * beta() + sp.z * identity4());
    if (r > 0.0) M += (-I1 * dU / r) * alpha_dot(d);
    out += M * b.amplitude;
  }
  return out;
}

std::string GaussianSource::describe() const {
  std::ostringstream os;
  os << "gaussian(" << bumps_.size() << " bumps, " << region_name(region_) << ")";
  return os.str();
}

double GaussianSource::margin(const ChartDescriptor& sigma, double eps) const {
  double m = 1e300;
  for (const Bump& b : bumps_) {
    const double t = normal_coordinate(sigma, b.center);
    double d = std::abs(t);
    if (eps > 0.0) d = std::min(d, std::abs(t - eps));
    m = std::min(m, d / b.sigma);
  }
  return m;
}

// ---------------------------------------------------------------------------

ManufacturedBump::ManufacturedBump(Vec3 center, double sigma, Spinor amplitude, SpectralPoint sp, Region region)
    : c_(std::move(center)), sigma_(sigma), a_(std::move(amplitude)), sp_(sp), region_(region) {}

Spinor ManufacturedBump::solution(const Vec3& x) const {
  return std::exp(-(x - c_).squaredNorm() / (2 * sigma_ * sigma_)) * a_;
}

Spinor ManufacturedBump::value(const Vec3& x) const {
  const Vec3 d = x - c_;
  const double g = std::exp(-d.squaredNorm() / (2 * sigma_ * sigma_));
  const SpinorMatrix M = (I1 / (sigma_ * sigma_)) * alpha_dot(d) + sp_.m * beta() - sp_.z * identity4();
  return g * (M * a_);
}

Spinor ManufacturedBump::free_resolvent(const SpectralPoint& sp, const Vec3& x) const {
  if (std::abs(sp.z - sp_.z) > 1e-14 * (1.0 + std::abs(sp_.z)) || sp.m != sp_.m)
    throw std::invalid_argument("ManufacturedBump: free resolvent known only at its own (z, m)");
  return solution(x);
}

std::string ManufacturedBump::describe() const {
  std::ostringstream os;
  os << "manufactured(sigma=" << sigma_ << ", " << region_name(region_) << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

ShellLayerSource::ShellLayerSource(const SurfaceQuadrature& sigma, double eps, int spin_component, int azimuthal_n,
                                   std::function<double(double)> chi, std::function<double(double)> h, int n_t)
    : sigma_(sigma), eps_(eps), s_(spin_component), n_(azimuthal_n), n_t_(n_t), chi_(std::move(chi)),
      h_(std::move(h)) {
  if (!(eps > 0.0)) throw std::invalid_argument("ShellLayerSource: eps must be positive");
  if (s_ < 0 || s_ > 3) throw std::invalid_argument("ShellLayerSource: spin component out of range");
}

int ShellLayerSource::single_mode(int N) const { return n_ + N - (spin_sigma(s_) == 1 ? 0 : 1); }

Spinor ShellLayerSource::density(const Vec3& u, double t) const {
  Spinor f = Spinor::Zero();
  f[s_] = chi_(t) * h_(u[2]) * std::exp(I1 * double(n_) * std::atan2(u[1], u[0]));
  return f;
}

Spinor ShellLayerSource::value(const Vec3& x) const {
  const double t = normal_coordinate(sigma_.chart_id, x);
  if (t <= 0.0 || t >= eps_) return Spinor::Zero();
  ChartDescriptor base = sigma_.chart_id;
  base.eps = 0.0;
  return density(closest_param(base, x), t);
}

Spinor ShellLayerSource::free_resolvent(const SpectralPoint& sp, const Vec3& x) const {
  // int_0^eps Phi_{Sigma^t}[f(., t)](x) dt; the integrand is smooth on either
  // side of the target's own layer, so the t-rule is split there.
  const double tx = normal_coordinate(sigma_.chart_id, x);
  std::vector<std::pair<double, double>> pieces;
  if (tx > 0.0 && tx < eps_) {
    pieces = {{0.0, tx}, {tx, eps_}};
  } else {
    pieces = {{0.0, eps_}};
  }
  std::vector<double> gx, gw;
  gauss_legendre(n_t_, gx, gw);
  Spinor acc = Spinor::Zero();
  for (auto [a, b] : pieces) {
    for (int q = 0; q < n_t_; ++q) {
      const double t = a + 0.5 * (b - a) * (gx[q] + 1.0);
      const double wt = 0.5 * (b - a) * gw[q];
      const SurfaceQuadrature layer = parallel_surface(sigma_, t);
      const LayerIntegrator li(layer, sp, PolarOptions{});
      const Vec3 anchor = closest_param(layer.chart_id, x);
      const double dist = (x - eval_chart(layer.chart_id, anchor).x).norm();
      acc += wt * li.integrate_function(x, anchor, dist, [&](const Vec3& u) { return density(u, t); });
    }
  }
  return acc;
}

std::string ShellLayerSource::describe() const {
  std::ostringstream os;
  os << "shell_layer(s=" << s_ << ", n=" << n_ << ", eps=" << eps_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<Vec3> EvaluationSet::in_region(Region r) const {
  std::vector<Vec3> out;
  for (size_t i = 0; i < points.size(); ++i)
    if (regions[i] == r) out.push_back(points[i]);
  return out;
}

std::vector<int> EvaluationSet::indices(Region r) const {
  std::vector<int> out;
  for (size_t i = 0; i < points.size(); ++i)
    if (regions[i] == r) out.push_back(static_cast<int>(i));
  return out;
}

void check_evaluation_set(const EvaluationSet& e, const ChartDescriptor& sigma, double eps, double guard) {
  for (size_t i = 0; i < e.points.size(); ++i) {
    const double t = normal_coordinate(sigma, e.points[i]);
    double d = std::abs(t);
    if (eps > 0.0) d = std::min(d, std::abs(t - eps));
    if (d < guard) {
      std::ostringstream os;
      os << "evaluation point " << i << " is " << d << " from the boundary (guard " << guard << ")";
      throw std::domain_error(os.str());
    }
    if (classify(sigma, eps, e.points[i]) != e.regions[i])
      throw std::invalid_argument("evaluation point has a wrong region tag");
  }
}

EvaluationSet random_targets(const ChartDescriptor& sigma, double eps, int count, double t0, double t1,
                             unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(t0, t1);
  ChartDescriptor base = sigma;
  base.eps = 0.0;
  EvaluationSet e;
  for (int i = 0; i < count; ++i) {
    const Vec3 u = Vec3(nd(gen), nd(gen), nd(gen)).normalized();
    const ChartPoint cp = eval_chart(base, u);
    const Vec3 x = cp.x + ud(gen) * cp.nu;
    e.points.push_back(x);
    e.regions.push_back(classify(sigma, eps, x));
  }
  return e;
}

}  // namespace dshell
