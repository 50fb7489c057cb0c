#include "diracshell/potential_ops.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace dshell {

ModeLayout layout_for(const SurfaceQuadrature& surf, const AssemblyOptions& opt) {
  if (!opt.use_modes || !surf.chart_id.axisymmetric()) return ModeLayout::dense();
  if (opt.modes.empty()) return ModeLayout::all_modes(surf.resolution);
  return ModeLayout::subset(surf.resolution, opt.modes);
}

int layout_rows(const SurfaceQuadrature& surf, const ModeLayout& layout) {
  return layout.modal() ? surf.rings() : surf.size();
}

int layout_node(const SurfaceQuadrature& surf, const ModeLayout& layout, int r) {
  return layout.modal() ? r * surf.azimuth() : r;
}

std::vector<double> layout_weights(const SurfaceQuadrature& surf, const ModeLayout& layout) {
  std::vector<double> w(layout_rows(surf, layout));
  for (size_t r = 0; r < w.size(); ++r) w[r] = surf.weights[layout_node(surf, layout, static_cast<int>(r))];
  return w;
}

Vec3 closest_param(const ChartDescriptor& chart, const Vec3& x) {
  const Vec3& s = chart.semiaxes;
  if (s[0] == s[1] && s[1] == s[2]) {
    const double r = x.norm();
    if (r < 1e-300) return Vec3(0.0, 0.0, 1.0);
    return x / r;
  }
  Vec3 u = Vec3(x[0] / s[0], x[1] / s[1], x[2] / s[2]);
  if (u.norm() < 1e-300) u = Vec3(0.0, 0.0, 1.0);
  u.normalize();
  // Gauss-Newton on the tangent plane of u.
  for (int it = 0; it < 50; ++it) {
    Vec3 e1, e2;
    polar_frame(u, e1, e2);
    const double h = 1e-6;
    const Vec3 y0 = eval_chart(chart, u).x;
    const Vec3 d1 = (eval_chart(chart, (u + h * e1).normalized()).x - eval_chart(chart, (u - h * e1).normalized()).x) / (2 * h);
    const Vec3 d2 = (eval_chart(chart, (u + h * e2).normalized()).x - eval_chart(chart, (u - h * e2).normalized()).x) / (2 * h);
    Eigen::Matrix<double, 3, 2> J;
    J.col(0) = d1;
    J.col(1) = d2;
    const Eigen::Vector2d step = (J.transpose() * J).ldlt().solve(J.transpose() * (x - y0));
    const double sn = step.norm();
    const double lim = 0.5;
    const Eigen::Vector2d st = sn > lim ? Eigen::Vector2d(step * (lim / sn)) : step;
    u = (u + st[0] * e1 + st[1] * e2).normalized();
    if (sn < 1e-14) break;
  }
  return u;
}

// ---------------------------------------------------------------------------

LayerIntegrator::LayerIntegrator(const SurfaceQuadrature& src, const SpectralPoint& sp, const PolarOptions& opt)
    : src_(src), sp_(sp), opt_(opt), interp_(src.ring_cos, src.ring_gw) {
  rho_min_ = src.chart_id.semiaxes.minCoeff() + std::max(0.0, src.chart_id.eps);
}

PolarRule LayerIntegrator::rule(const Vec3& anchor, double dist) const {
  const int L = interp_.degree();
  const double kappa = sp_.k.imag();
  double theta_max = M_PI;
  if (kappa > 0.0) theta_max = std::min(M_PI, (opt_.truncation / kappa + dist) / (rho_min_ * 2.0 / M_PI));
  return make_polar_rule(anchor, dist / rho_min_, std::max(kappa, 0.0) * rho_min_, L, theta_max, opt_);
}

namespace {
Eigen::MatrixXcd kernel_row(const ChartDescriptor& chart, const SpectralPoint& sp, const Vec3& x, const PolarRule& r) {
  Eigen::MatrixXcd K(16, r.size());
  for (int q = 0; q < r.size(); ++q) {
    const ChartPoint cp = eval_chart(chart, r.u[q]);
    const Vec3 dx = x - cp.x;
    if (dx.norm() < 1e-14) throw std::domain_error("layer integral: quadrature point coincides with target");
    const SpinorMatrix P = phi(sp, dx) * (r.w[q] * cp.jac);
    for (int s = 0; s < 4; ++s)
      for (int t = 0; t < 4; ++t) K(4 * s + t, q) = P(s, t);
  }
  return K;
}
}  // namespace

std::vector<Eigen::MatrixXcd> LayerIntegrator::integrals(const Vec3& x, const Vec3& anchor, double dist,
                                                         const std::vector<int>& nlist) const {
  const PolarRule r = rule(anchor, dist);
  const int Q = r.size();
  const int N = src_.rings();
  const int L = interp_.degree();
  const Eigen::MatrixXcd K = kernel_row(src_.chart_id, sp_, x, r);
  std::vector<Eigen::MatrixXcd> out(nlist.size());
  std::map<int, std::vector<size_t>> by_abs;
  for (size_t i = 0; i < nlist.size(); ++i) {
    if (std::abs(nlist[i]) > L)
      out[i] = Eigen::MatrixXcd::Zero(16, N);
    else
      by_abs[std::abs(nlist[i])].push_back(i);
  }
  Eigen::MatrixXd G(32, Q);
  for (const auto& [an, idx] : by_abs) {
    const Eigen::MatrixXd R = interp_.radial(an, r.cos_theta);
    for (size_t i : idx) {
      const int n = nlist[i];
      for (int q = 0; q < Q; ++q) {
        const cplx e = std::polar(1.0, n * r.phi[q]);
        for (int k = 0; k < 16; ++k) {
          const cplx v = K(k, q) * e;
          G(k, q) = v.real();
          G(16 + k, q) = v.imag();
        }
      }
      const Eigen::MatrixXd P = G * R;
      out[i] = P.topRows(16).cast<cplx>() + I1 * P.bottomRows(16).cast<cplx>();
    }
  }
  return out;
}

Eigen::MatrixXcd LayerIntegrator::density_coefficients(const Eigen::VectorXcd& f) const {
  const int N = src_.rings();
  const int nb = src_.azimuth();
  const int L = interp_.degree();
  if (f.size() != 4 * src_.size()) throw std::invalid_argument("density_coefficients: size mismatch");
  Eigen::MatrixXcd fh = Eigen::MatrixXcd::Zero(4 * N, 2 * L + 1);
  for (int n = -L; n <= L; ++n)
    for (int d = 0; d < nb; ++d) {
      const cplx e = std::polar(1.0 / nb, -2.0 * M_PI * n * d / nb);
      for (int c = 0; c < N; ++c)
        for (int s = 0; s < 4; ++s) fh(4 * c + s, n + L) += e * f[4 * (c * nb + d) + s];
    }
  return fh;
}

Spinor LayerIntegrator::apply(const Vec3& x, const Vec3& anchor, double dist, const Eigen::MatrixXcd& fhat) const {
  const PolarRule r = rule(anchor, dist);
  const auto coeffs = interp_.harmonic_coefficients(fhat, 4);
  const Eigen::MatrixXcd fq = interp_.synthesize(coeffs, r.cos_theta, r.phi);
  Spinor acc = Spinor::Zero();
  for (int q = 0; q < r.size(); ++q) {
    const ChartPoint cp = eval_chart(src_.chart_id, r.u[q]);
    const Vec3 dx = x - cp.x;
    if (dx.norm() < 1e-14) throw std::domain_error("layer integral: quadrature point coincides with target");
    acc += (r.w[q] * cp.jac) * (phi(sp_, dx) * fq.row(q).transpose());
  }
  return acc;
}

Spinor LayerIntegrator::integrate_function(const Vec3& x, const Vec3& anchor, double dist,
                                           const std::function<Spinor(const Vec3& u)>& g) const {
  const PolarRule r = rule(anchor, dist);
  Spinor acc = Spinor::Zero();
  for (int q = 0; q < r.size(); ++q) {
    const ChartPoint cp = eval_chart(src_.chart_id, r.u[q]);
    const Vec3 dx = x - cp.x;
    if (dx.norm() < 1e-14) throw std::domain_error("layer integral: quadrature point coincides with target");
    acc += (r.w[q] * cp.jac) * (phi(sp_, dx) * g(r.u[q]));
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

bool same_surface(const SurfaceQuadrature& a, const SurfaceQuadrature& b) {
  return a.resolution == b.resolution && a.chart_id.same_base(b.chart_id) && a.chart_id.eps == b.chart_id.eps;
}

struct TargetGeom {
  Vec3 x, anchor;
  double dist;
};

TargetGeom target_geometry(const SurfaceQuadrature& src, const Vec3& x, const Vec3* shared_param) {
  TargetGeom g;
  g.x = x;
  g.anchor = shared_param ? *shared_param : closest_param(src.chart_id, x);
  g.dist = (x - eval_chart(src.chart_id, g.anchor).x).norm();
  return g;
}

std::vector<int> frequencies_for(const ModeLayout& layout, int N) {
  const int L = N - 1;
  std::set<int> ns;
  if (layout.modal()) {
    for (int j : layout.modes)
      for (int s = 0; s < 4; ++s) {
        const int n = mode_freq(j, N, s);
        if (std::abs(n) <= L) ns.insert(n);
      }
  } else {
    for (int n = -L; n <= L; ++n) ns.insert(n);
  }
  return std::vector<int>(ns.begin(), ns.end());
}

// Scatter the per-frequency integrals of one target into operator row r.
void scatter_row(BlockOperator& op, int r, const std::vector<int>& nlist, const std::vector<Eigen::MatrixXcd>& A,
                 const SurfaceQuadrature& src) {
  const int N = src.rings();
  std::map<int, int> pos;
  for (size_t i = 0; i < nlist.size(); ++i) pos[nlist[i]] = static_cast<int>(i);
  if (op.layout.modal()) {
    for (int k = 0; k < op.nmodes(); ++k) {
      const int j = op.layout.modes[k];
      for (int t = 0; t < 4; ++t) {
        auto it = pos.find(mode_freq(j, N, t));
        if (it == pos.end()) continue;
        const Eigen::MatrixXcd& Ai = A[it->second];
        for (int c = 0; c < N; ++c)
          for (int s = 0; s < 4; ++s) op.blocks[k](4 * r + s, 4 * c + t) = Ai(4 * s + t, c);
      }
    }
    return;
  }
  const int nb = src.azimuth();
  Eigen::MatrixXcd& B = op.blocks[0];
  for (size_t i = 0; i < nlist.size(); ++i) {
    const int n = nlist[i];
    for (int d = 0; d < nb; ++d) {
      const cplx e = std::polar(1.0 / nb, -2.0 * M_PI * n * d / nb);
      for (int c = 0; c < N; ++c)
        for (int s = 0; s < 4; ++s)
          for (int t = 0; t < 4; ++t) B(4 * r + s, 4 * (c * nb + d) + t) += e * A[i](4 * s + t, c);
    }
  }
}

BlockOperator punctured_cauchy(const SurfaceQuadrature& surf, const SpectralPoint& sp, const ModeLayout& layout) {
  const int rows = layout_rows(surf, layout);
  const int cols = rows;
  BlockOperator op(layout, rows, cols);
  const int N = surf.rings();
  const int nb = surf.azimuth();
  for (int r = 0; r < rows; ++r) {
    const int i = layout_node(surf, layout, r);
    for (int jn = 0; jn < surf.size(); ++jn) {
      if (jn == i) continue;
      const SpinorMatrix K = phi(sp, surf.nodes[i] - surf.nodes[jn]) * surf.weights[jn];
      if (!layout.modal()) {
        op.blocks[0].block<4, 4>(4 * r, 4 * jn) = K;
        continue;
      }
      const int c = jn / nb, d = jn % nb;
      for (int k = 0; k < op.nmodes(); ++k)
        for (int t = 0; t < 4; ++t) {
          const cplx e = std::polar(1.0, 2.0 * M_PI * mode_freq(layout.modes[k], N, t) * d / nb);
          for (int s = 0; s < 4; ++s) op.blocks[k](4 * r + s, 4 * c + t) += K(s, t) * e;
        }
    }
  }
  return op;
}

// Diagonal 4x4 corrections fitted so that C[i alpha.nu g] = +1/2 g for traces
// of interior solutions and -1/2 g for exterior ones.
void calibrate_diagonal(BlockOperator& op, const SurfaceQuadrature& surf, const SpectralPoint& sp) {
  const double scale = surf.chart_id.semiaxes.maxCoeff() + surf.chart_id.eps;
  const double inner = 0.3 * (surf.chart_id.semiaxes.minCoeff() + surf.chart_id.eps);
  std::vector<std::pair<Vec3, double>> poles;  // source point, sign of the identity
  for (int a = 0; a < 3; ++a)
    for (int sg : {-1, 1}) {
      Vec3 p = Vec3::Zero();
      p[a] = sg * 2.5 * scale;
      poles.push_back({p, 0.5});
      Vec3 q = Vec3::Zero();
      q[a] = sg * inner;
      poles.push_back({q, -0.5});
    }
  poles.push_back({Vec3::Zero(), -0.5});
  const int K = static_cast<int>(poles.size()) * 4;
  const int rows = op.trows;
  for (int r = 0; r < rows; ++r) {
    const int i = layout_node(surf, op.layout, r);
    const SpinorMatrix an = I1 * alpha_dot(surf.nu(i));
    Eigen::MatrixXcd X(4, K), R(4, K);
    int col = 0;
    for (const auto& [p, sign] : poles)
      for (int e = 0; e < 4; ++e, ++col) {
        Spinor acc = Spinor::Zero();
        for (int jn = 0; jn < surf.size(); ++jn) {
          if (jn == i) continue;
          const Spinor g = phi(sp, surf.nodes[jn] - p).col(e);
          acc += surf.weights[jn] * (phi(sp, surf.nodes[i] - surf.nodes[jn]) * (an * g));
        }
        const Spinor gi = phi(sp, surf.nodes[i] - p).col(e);
        X.col(col) = an * gi;
        R.col(col) = sign * gi - acc;
      }
    const Eigen::Matrix4cd D = R * X.completeOrthogonalDecomposition().pseudoInverse();
    for (auto& B : op.blocks) B.block<4, 4>(4 * r, 4 * r) += D;
  }
}

}  // namespace

BlockOperator assemble_surface_layer(const SurfaceQuadrature& src, const SurfaceQuadrature& tgt,
                                     const SpectralPoint& sp, const AssemblyOptions& opt) {
  const bool self = same_surface(src, tgt);
  ModeLayout layout = layout_for(src, opt);
  if (layout.modal() && (!tgt.chart_id.axisymmetric() || tgt.resolution != src.resolution))
    layout = ModeLayout::dense();
  const int rows = layout.modal() ? tgt.rings() : tgt.size();
  const int cols = layout.modal() ? src.rings() : src.size();
  BlockOperator op(layout, rows, cols);
  op.kind = self ? OpKind::Cauchy : OpKind::Layer;
  op.sp = sp;
  op.source = src.chart_id.describe();
  op.target = tgt.chart_id.describe();
  const LayerIntegrator li(src, sp, opt.polar);
  const std::vector<int> nlist = frequencies_for(layout, src.resolution);
  const bool shared = src.chart_id.same_base(tgt.chart_id);
  for (int r = 0; r < rows; ++r) {
    const int i = layout.modal() ? r * tgt.azimuth() : r;
    TargetGeom g = target_geometry(src, tgt.nodes[i], shared ? &tgt.dirs[i] : nullptr);
    if (self) g.dist = 0.0;
    else if (g.dist < 1e-12) throw std::domain_error("assemble_surface_layer: target lies on the source surface");
    const auto A = li.integrals(g.x, g.anchor, g.dist, nlist);
    scatter_row(op, r, nlist, A, src);
  }
  return op;
}

BlockOperator assemble_cauchy(const SurfaceQuadrature& surf, const SpectralPoint& sp, const AssemblyOptions& opt) {
  if (opt.pv == PVMode::Polar) return assemble_surface_layer(surf, surf, sp, opt);
  BlockOperator op = punctured_cauchy(surf, sp, layout_for(surf, opt));
  op.kind = OpKind::Cauchy;
  op.sp = sp;
  op.source = op.target = surf.chart_id.describe();
  if (opt.pv == PVMode::Calibrated) calibrate_diagonal(op, surf, sp);
  return op;
}

BlockOperator assemble_layer(const SurfaceQuadrature& src, const std::vector<Vec3>& targets, const SpectralPoint& sp,
                             const AssemblyOptions& opt) {
  BlockOperator op(ModeLayout::dense(), static_cast<int>(targets.size()), src.size());
  op.kind = OpKind::Layer;
  op.sp = sp;
  op.source = src.chart_id.describe();
  op.target = "points";
  const LayerIntegrator li(src, sp, opt.polar);
  const std::vector<int> nlist = frequencies_for(ModeLayout::dense(), src.resolution);
  const double guard = 1e-10 * (src.chart_id.semiaxes.maxCoeff() + src.chart_id.eps);
  for (size_t r = 0; r < targets.size(); ++r) {
    const TargetGeom g = target_geometry(src, targets[r], nullptr);
    if (g.dist < guard) throw std::domain_error("assemble_layer: target too close to the surface");
    scatter_row(op, static_cast<int>(r), nlist, li.integrals(g.x, g.anchor, g.dist, nlist), src);
  }
  return op;
}

std::vector<Spinor> layer_apply(const SurfaceQuadrature& src, const std::vector<Vec3>& targets,
                                const SpectralPoint& sp, const Eigen::VectorXcd& f, const AssemblyOptions& opt) {
  const LayerIntegrator li(src, sp, opt.polar);
  const Eigen::MatrixXcd fh = li.density_coefficients(f);
  const double guard = 1e-10 * (src.chart_id.semiaxes.maxCoeff() + src.chart_id.eps);
  std::vector<Spinor> out;
  out.reserve(targets.size());
  for (const Vec3& x : targets) {
    const TargetGeom g = target_geometry(src, x, nullptr);
    if (g.dist < guard) throw std::domain_error("layer_apply: target too close to the surface");
    out.push_back(li.apply(g.x, g.anchor, g.dist, fh));
  }
  return out;
}

// ---------------------------------------------------------------------------

BlockOperator surface_pointwise(const SurfaceQuadrature& surf, const ModeLayout& layout,
                                const std::function<SpinorMatrix(int node)>& m) {
  std::vector<SpinorMatrix> mats(layout_rows(surf, layout));
  for (size_t r = 0; r < mats.size(); ++r) mats[r] = m(layout_node(surf, layout, static_cast<int>(r)));
  return BlockOperator::pointwise(layout, mats);
}

BlockOperator alpha_nu_op(const SurfaceQuadrature& surf, const ModeLayout& layout) {
  return surface_pointwise(surf, layout, [&](int i) { return alpha_dot(surf.nu(i)); });
}

BlockOperator beta_op(const SurfaceQuadrature& surf, const ModeLayout& layout) {
  return surface_pointwise(surf, layout, [](int) { return beta(); });
}

BlockOperator proj_op(const SurfaceQuadrature& surf, const ModeLayout& layout, Sign s) {
  return surface_pointwise(surf, layout, [&](int i) { return proj_pm_unchecked(surf.nu(i), to_int(s)); });
}

BlockOperator trace_limits(const BlockOperator& cauchy, const SurfaceQuadrature& surf, Sign side) {
  BlockOperator r = cauchy + alpha_nu_op(surf, cauchy.layout) * cplx(0.0, -0.5 * to_int(side));
  r.kind = OpKind::Composite;
  return r;
}

BlockOperator lambda_pm(const BlockOperator& cauchy, const SurfaceQuadrature& surf, Sign s) {
  BlockOperator r = beta_op(surf, cauchy.layout) * cplx(0.5) + cauchy * cplx(to_int(s));
  r.kind = OpKind::Lambda;
  r.sp = cauchy.sp;
  r.source = r.target = cauchy.source;
  return r;
}

// ---------------------------------------------------------------------------

VolumeQuadrature ball_quadrature(const Vec3& center, double radius, int n_radial, int n_angular) {
  if (!(radius > 0.0) || n_radial < 1 || n_angular < 2) throw std::invalid_argument("ball_quadrature: bad parameters");
  std::vector<double> rx, rw;
  gauss_legendre(n_radial, rx, rw);
  const SurfaceQuadrature s2 = make_sphere(1.0, std::max(4, n_angular));
  VolumeQuadrature vq;
  for (int k = 0; k < n_radial; ++k) {
    const double r = 0.5 * radius * (rx[k] + 1.0);
    const double w = 0.5 * radius * rw[k] * r * r;
    for (int i = 0; i < s2.size(); ++i) {
      vq.points.push_back(center + r * s2.dirs[i]);
      vq.weights.push_back(w * s2.s2_weights[i]);
    }
  }
  return vq;
}

VolumeQuadrature shell_volume_quadrature(const ShellQuadrature& shell) {
  VolumeQuadrature vq;
  for (int i = 0; i < shell.base.size(); ++i)
    for (int r = 0; r < shell.n_radial(); ++r) {
      vq.points.push_back(shell.point(i, r));
      vq.weights.push_back(shell.weight(i, r));
    }
  return vq;
}

std::vector<Spinor> volume_potential(const VolumeQuadrature& vq, const std::vector<Spinor>& f,
                                     const SpectralPoint& sp, const std::vector<Vec3>& targets) {
  if (static_cast<int>(f.size()) != vq.size()) throw std::invalid_argument("volume_potential: size mismatch");
  std::vector<Spinor> out(targets.size(), Spinor::Zero());
  for (size_t t = 0; t < targets.size(); ++t)
    for (int j = 0; j < vq.size(); ++j) {
      const Vec3 d = targets[t] - vq.points[j];
      if (d.norm() < 1e-12) throw std::domain_error("volume_potential: target coincides with a quadrature node");
      if (f[j].squaredNorm() == 0.0) continue;
      out[t] += vq.weights[j] * (phi(sp, d) * f[j]);
    }
  return out;
}

// ---------------------------------------------------------------------------

BlockOperator ps_fixed(const BlockOperator& lambda_plus, const SurfaceQuadrature& sigma) {
  const ModeLayout& l = lambda_plus.layout;
  const BlockOperator inv = invert(lambda_plus).inverse;
  BlockOperator r = proj_op(sigma, l, Sign::Plus) * beta_op(sigma, l) * inv * proj_op(sigma, l, Sign::Minus) *
                    cplx(-1.0);
  r.kind = OpKind::PS;
  r.sp = lambda_plus.sp;
  return r;
}

BlockOperator ps_eps(const BlockOperator& lambda_plus_eps, const SurfaceQuadrature& sigma_eps) {
  const ModeLayout& l = lambda_plus_eps.layout;
  const BlockOperator inv = invert(lambda_plus_eps).inverse;
  BlockOperator r = proj_op(sigma_eps, l, Sign::Minus) * beta_op(sigma_eps, l) * inv *
                    proj_op(sigma_eps, l, Sign::Plus) * cplx(-1.0);
  r.kind = OpKind::PS;
  r.sp = lambda_plus_eps.sp;
  return r;
}

BlockOperator ps_fixed(const SurfaceQuadrature& sigma, const SpectralPoint& sp, const AssemblyOptions& opt) {
  return ps_fixed(lambda_pm(assemble_cauchy(sigma, sp, opt), sigma, Sign::Plus), sigma);
}

BlockOperator ps_eps(const SurfaceQuadrature& sigma_eps, const SpectralPoint& sp, const AssemblyOptions& opt) {
  return ps_eps(lambda_pm(assemble_cauchy(sigma_eps, sp, opt), sigma_eps, Sign::Plus), sigma_eps);
}

ShellSystem ps_shell(const SurfaceQuadrature& sigma, const SurfaceQuadrature& sigma_eps, const SpectralPoint& sp,
                     const AssemblyOptions& opt, bool coupled) {
  if (sigma.resolution != sigma_eps.resolution || !sigma.chart_id.same_base(sigma_eps.chart_id))
    throw std::invalid_argument("ps_shell: surfaces do not share a base mesh");
  ShellSystem sh;
  sh.coupled = coupled;
  const BlockOperator lam = lambda_pm(assemble_cauchy(sigma, sp, opt), sigma, Sign::Plus);
  const BlockOperator lame = lambda_pm(assemble_cauchy(sigma_eps, sp, opt), sigma_eps, Sign::Plus);
  const ModeLayout& l = lam.layout;
  if (!(lame.layout == l)) throw std::invalid_argument("ps_shell: layouts differ");
  sh.rings_sigma = lam.trows;
  if (coupled) {
    sh.cross_x = assemble_surface_layer(sigma_eps, sigma, sp, opt);
    sh.cross_y = assemble_surface_layer(sigma, sigma_eps, sp, opt);
  } else {
    sh.cross_x = BlockOperator::zero(l, lam.trows, lame.scols);
    sh.cross_y = BlockOperator::zero(l, lame.trows, lam.scols);
  }
  sh.system = BlockOperator::block2(lam, sh.cross_x, sh.cross_y, lame);
  sh.system.sp = sp;
  InverseResult inv = invert(sh.system);
  sh.system_inv = inv.inverse;
  sh.condition = inv.condition;
  const BlockOperator zs = BlockOperator::zero(l, lam.trows, lame.scols);
  const BlockOperator ze = BlockOperator::zero(l, lame.trows, lam.scols);
  sh.out_map = BlockOperator::block2(beta_op(sigma, l) * proj_op(sigma, l, Sign::Plus) * cplx(-1.0), zs, ze,
                                     beta_op(sigma_eps, l) * proj_op(sigma_eps, l, Sign::Minus) * cplx(-1.0));
  const BlockOperator in_proj =
      BlockOperator::block2(proj_op(sigma, l, Sign::Plus), zs, ze, proj_op(sigma_eps, l, Sign::Minus));
  sh.ps = sh.out_map * sh.system_inv * in_proj;
  sh.ps.kind = OpKind::PS;
  sh.ps.sp = sp;
  return sh;
}

}  // namespace dshell
