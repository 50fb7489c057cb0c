#include "diracshell/geometry.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dshell {

namespace {

Mat3 tangent_projector(const Vec3& nu) { return Mat3::Identity() - nu * nu.transpose(); }

void check_semiaxes(const Vec3& s) {
  for (int k = 0; k < 3; ++k)
    if (!(s[k] > 0.0) || !std::isfinite(s[k])) throw std::invalid_argument("ellipsoid: degenerate semiaxes");
}

SurfaceQuadrature build(const ChartDescriptor& chart, int N) {
  if (N < 4) throw std::invalid_argument("surface resolution N must be >= 4");
  SurfaceQuadrature s;
  s.chart_id = chart;
  s.resolution = N;
  std::vector<double> gx, gw;
  gauss_legendre(N, gx, gw);
  s.ring_cos.resize(N);
  s.ring_gw.resize(N);
  for (int a = 0; a < N; ++a) {  // theta increasing: cos decreasing
    s.ring_cos[a] = gx[N - 1 - a];
    s.ring_gw[a] = gw[N - 1 - a];
  }
  const int nb = 2 * N;
  const double dphi = 2.0 * M_PI / nb;
  s.nodes.reserve(N * nb);
  for (int a = 0; a < N; ++a) {
    const double ct = s.ring_cos[a];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int b = 0; b < nb; ++b) {
      const double ph = s.phi(b);
      const Vec3 u(st * std::cos(ph), st * std::sin(ph), ct);
      const ChartPoint cp = eval_chart(chart, u);
      s.dirs.push_back(u);
      s.s2_weights.push_back(s.ring_gw[a] * dphi);
      s.nodes.push_back(cp.x);
      s.weights.push_back(s.ring_gw[a] * dphi * cp.jac);
      s.normals.push_back(cp.nu);
      s.weingarten.push_back(cp.W);
    }
  }
  return s;
}

}  // namespace

double ChartDescriptor::max_abs_curvature() const {
  // Extremes of the principal curvatures of an ellipsoid: c_max / c_min^2 over axes.
  const double amin = semiaxes.minCoeff();
  const double amax = semiaxes.maxCoeff();
  return amax / (amin * amin);
}

std::string ChartDescriptor::describe() const {
  std::ostringstream os;
  os << std::setprecision(17);
  if (sphere)
    os << "sphere(R=" << semiaxes[0] << ")";
  else
    os << "ellipsoid(" << semiaxes[0] << "," << semiaxes[1] << "," << semiaxes[2] << ")";
  if (eps != 0.0) os << "+eps=" << eps;
  return os.str();
}

ChartPoint eval_chart(const ChartDescriptor& chart, const Vec3& u) {
  const Vec3& s = chart.semiaxes;
  ChartPoint p;
  const Vec3 x0(s[0] * u[0], s[1] * u[1], s[2] * u[2]);
  const Vec3 g(u[0] / s[0], u[1] / s[1], u[2] / s[2]);
  const double gn = g.norm();
  p.nu = g / gn;
  const Mat3 P = tangent_projector(p.nu);
  Mat3 D = Mat3::Zero();
  for (int k = 0; k < 3; ++k) D(k, k) = 1.0 / (s[k] * s[k]);
  const Mat3 W0 = -(P * D * P) / gn;
  const double jac0 = s[0] * s[1] * s[2] * gn;
  if (chart.eps == 0.0) {
    p.x = x0;
    p.jac = jac0;
    p.W = W0;
    return p;
  }
  const Mat3 A = Mat3::Identity() - chart.eps * W0;
  p.x = x0 + chart.eps * p.nu;
  p.jac = jac0 * A.determinant();
  p.W = W0 * A.inverse();
  p.W = 0.5 * (p.W + p.W.transpose());
  return p;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

double SurfaceQuadrature::phi(int b) const { return 2.0 * M_PI * b / (2.0 * resolution); }

double SurfaceQuadrature::total_area() const {
  double a = 0.0;
  for (double w : weights) a += w;
  return a;
}

std::pair<double, double> SurfaceQuadrature::principal_curvatures(int i) const {
  const Vec3 n = nu(i);
  Vec3 t1 = n.unitOrthogonal();
  Vec3 t2 = n.cross(t1);
  Eigen::Matrix2d w2;
  w2 << t1.dot(weingarten[i] * t1), t1.dot(weingarten[i] * t2), t2.dot(weingarten[i] * t1),
      t2.dot(weingarten[i] * t2);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(w2);
  return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

double SurfaceQuadrature::max_abs_curvature() const {
  double m = 0.0;
  for (int i = 0; i < size(); ++i) {
    auto [k1, k2] = principal_curvatures(i);
    m = std::max({m, std::abs(k1), std::abs(k2)});
  }
  return m;
}

SurfaceQuadrature make_sphere(double radius, int N) {
  if (!(radius > 0.0)) throw std::invalid_argument("make_sphere: radius must be positive");
  ChartDescriptor c;
  c.semiaxes = Vec3(radius, radius, radius);
  c.sphere = true;
  return build(c, N);
}

SurfaceQuadrature make_ellipsoid(const Vec3& semiaxes, int N) {
  check_semiaxes(semiaxes);
  ChartDescriptor c;
  c.semiaxes = semiaxes;
  c.sphere = false;
  return build(c, N);
}

double eps_guard(const SurfaceQuadrature& base) { return 0.5 / base.chart_id.max_abs_curvature(); }

SurfaceQuadrature parallel_surface(const SurfaceQuadrature& base, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("parallel_surface: eps must be non-negative");
  const double total = base.chart_id.eps + eps;
  if (total > eps_guard(base) * (1.0 + 1e-12))
    throw std::invalid_argument("parallel_surface: eps exceeds 0.5 / max curvature");
  ChartDescriptor c = base.chart_id;
  c.eps = total;
  SurfaceQuadrature s = base;
  s.chart_id = c;
  s.orientation = -1;
  for (int i = 0; i < s.size(); ++i) {
    const Vec3 n = base.nu(i);
    const Mat3 A = Mat3::Identity() - eps * base.weingarten[i];
    s.nodes[i] = base.nodes[i] + eps * n;
    s.weights[i] = base.weights[i] * A.determinant();
    s.normals[i] = -n;
    Mat3 W = base.weingarten[i] * A.inverse();
    s.weingarten[i] = 0.5 * (W + W.transpose());
  }
  return s;
}

double density_norm(const SurfaceQuadrature& s, const Eigen::VectorXcd& f) {
  if (f.size() != 4 * s.size()) throw std::invalid_argument("density_norm: size mismatch");
  double acc = 0.0;
  for (int i = 0; i < s.size(); ++i) acc += s.weights[i] * f.segment<4>(4 * i).squaredNorm();
  return std::sqrt(acc);
}

namespace {
void check_pair(const SurfaceQuadrature& sigma, const SurfaceQuadrature& se, const Eigen::VectorXcd& f) {
  if (sigma.resolution != se.resolution || !sigma.chart_id.same_base(se.chart_id) || sigma.size() != se.size())
    throw std::invalid_argument("transform_eps: meshes do not match");
  if (f.size() != 4 * sigma.size()) throw std::invalid_argument("transform_eps: density size mismatch");
}
double jac_ratio(const SurfaceQuadrature& sigma, const SurfaceQuadrature& se, int i) {
  return se.weights[i] / sigma.weights[i];
}
}  // namespace

Eigen::VectorXcd transform_eps(const SurfaceQuadrature& sigma, const SurfaceQuadrature& sigma_eps,
                               const Eigen::VectorXcd& f) {
  check_pair(sigma, sigma_eps, f);
  Eigen::VectorXcd g(f.size());
  for (int i = 0; i < sigma.size(); ++i) g.segment<4>(4 * i) = f.segment<4>(4 * i) / jac_ratio(sigma, sigma_eps, i);
  return g;
}

Eigen::VectorXcd transform_eps_inv(const SurfaceQuadrature& sigma, const SurfaceQuadrature& sigma_eps,
                                   const Eigen::VectorXcd& f) {
  check_pair(sigma, sigma_eps, f);
  Eigen::VectorXcd g(f.size());
  for (int i = 0; i < sigma.size(); ++i) g.segment<4>(4 * i) = f.segment<4>(4 * i) * jac_ratio(sigma, sigma_eps, i);
  return g;
}

double ShellQuadrature::volume() const {
  double v = 0.0;
  for (int i = 0; i < base.size(); ++i)
    for (int r = 0; r < n_radial(); ++r) v += weight(i, r);
  return v;
}

ShellQuadrature shell_quadrature(const SurfaceQuadrature& base, double eps, int n_radial) {
  if (n_radial < 2) throw std::invalid_argument("shell_quadrature: n_radial must be >= 2");
  if (!(eps > 0.0)) throw std::invalid_argument("shell_quadrature: eps must be positive");
  if (base.chart_id.eps + eps > eps_guard(base) * (1.0 + 1e-12))
    throw std::invalid_argument("shell_quadrature: eps exceeds 0.5 / max curvature");
  ShellQuadrature q;
  q.base = base;
  q.epsilon = eps;
  std::vector<double> gx, gw;
  gauss_legendre(n_radial, gx, gw);
  for (int r = 0; r < n_radial; ++r) {
    q.t.push_back(0.5 * eps * (gx[r] + 1.0));
    q.t_weights.push_back(0.5 * eps * gw[r]);
  }
  q.jacobians.resize(base.size() * n_radial);
  for (int i = 0; i < base.size(); ++i)
    for (int r = 0; r < n_radial; ++r)
      q.jacobians[i * n_radial + r] = (Mat3::Identity() - q.t[r] * base.weingarten[i]).determinant();
  return q;
}

void write_mesh_csv(const SurfaceQuadrature& s, std::ostream& os) {
  os << "index,x,y,z,weight,nx,ny,nz,kappa1,kappa2\n";
  os << std::setprecision(17);
  for (int i = 0; i < s.size(); ++i) {
    auto [k1, k2] = s.principal_curvatures(i);
    const Vec3& x = s.nodes[i];
    const Vec3& n = s.normals[i];
    os << i << ',' << x[0] << ',' << x[1] << ',' << x[2] << ',' << s.weights[i] << ',' << n[0] << ',' << n[1] << ','
       << n[2] << ',' << k1 << ',' << k2 << '\n';
  }
}

}  // namespace dshell
