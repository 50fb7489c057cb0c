#include "diracshell/resolvents.hpp"

#include <cmath>
#include <stdexcept>

namespace dshell {

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::OmegaPlus: return "omega_plus";
    case Domain::OmegaMinus: return "omega_minus";
    case Domain::OmegaMinusEps: return "omega_minus_eps";
    case Domain::Shell: return "shell";
  }
  return "?";
}

Spinor free_field(const std::vector<SourcePtr>& f, const SpectralPoint& sp, const Vec3& x) {
  Spinor w = Spinor::Zero();
  for (const SourcePtr& s : f) w += s->free_resolvent(sp, x);
  return w;
}

Eigen::VectorXcd free_trace(const SurfaceQuadrature& s, const std::vector<SourcePtr>& f, const SpectralPoint& sp) {
  const int n = s.size();
  const int N = s.rings(), nphi = s.azimuth();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(4 * n);
  for (const SourcePtr& src : f) {
    const int j = src->single_mode(N);
    if (j >= 0 && s.chart_id.axisymmetric()) {
      for (int a = 0; a < N; ++a) {
        const Spinor F = src->free_resolvent(sp, s.nodes[a * nphi]);
        for (int b = 0; b < nphi; ++b)
          for (int c = 0; c < 4; ++c)
            out[4 * (a * nphi + b) + c] += std::exp(I1 * (double(mode_freq(j, N, c)) * s.phi(b))) * F[c];
      }
    } else {
      for (int i = 0; i < n; ++i) out.segment<4>(4 * i) += src->free_resolvent(sp, s.nodes[i]);
    }
  }
  return out;
}

std::vector<SourcePtr> sources_in(const std::vector<SourcePtr>& f, Region r) {
  std::vector<SourcePtr> out;
  for (const SourcePtr& s : f)
    if (s->region() == r) out.push_back(s);
  return out;
}

namespace {

// Node-wise multiplication of a density by m(node).
template <class F>
Eigen::VectorXcd pointwise_apply(const SurfaceQuadrature& s, const Eigen::VectorXcd& v, F&& m) {
  Eigen::VectorXcd out(v.size());
  for (int i = 0; i < s.size(); ++i) out.segment<4>(4 * i) = m(i) * v.segment<4>(4 * i);
  return out;
}

Eigen::VectorXcd beta_proj(const SurfaceQuadrature& s, const Eigen::VectorXcd& v, int sign) {
  return pointwise_apply(s, v, [&](int i) { return SpinorMatrix(beta() * proj_pm_unchecked(s.nu(i), sign)); });
}

Eigen::VectorXcd proj(const SurfaceQuadrature& s, const Eigen::VectorXcd& v, int sign) {
  return pointwise_apply(s, v, [&](int i) { return proj_pm_unchecked(s.nu(i), sign); });
}

// Normal coordinate relative to Sigma (the base of s).
double base_t(const SurfaceQuadrature& s, const Vec3& x) { return normal_coordinate(s.chart_id, x); }

bool in_domain(Domain d, const SurfaceQuadrature& surf, const Vec3& x) {
  const double t = base_t(surf, x);
  switch (d) {
    case Domain::OmegaPlus: return t < 0.0;
    case Domain::OmegaMinus: return t > 0.0;
    case Domain::OmegaMinusEps: return t > surf.chart_id.eps;
    case Domain::Shell: return false;
  }
  return false;
}

Eigen::VectorXcd concat(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd c(a.size() + b.size());
  c << a, b;
  return c;
}

void add_field(std::vector<Spinor>& acc, const std::vector<int>& idx, const std::vector<Spinor>& v, double sign) {
  for (size_t k = 0; k < idx.size(); ++k) acc[idx[k]] += sign * v[k];
}

std::vector<Vec3> pick(const EvaluationSet& e, const std::vector<int>& idx) {
  std::vector<Vec3> p;
  for (int i : idx) p.push_back(e.points[i]);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------

SurfaceSolver::SurfaceSolver(const SurfaceQuadrature& s, const SpectralPoint& sp, const ResolventOptions& opt)
    : surf_(s), sp_(sp), opt_(opt) {
  lambda_ = lambda_pm(assemble_cauchy(surf_, sp_, opt_.assembly), surf_, Sign::Plus);
  InverseResult r = invert(lambda_, opt_.max_condition);
  inv_ = std::move(r.inverse);
  cond_ = r.condition;
}

std::vector<Spinor> SurfaceSolver::field(const std::vector<Vec3>& pts, const Eigen::VectorXcd& rho) const {
  if (pts.empty()) return {};
  return layer_apply(surf_, pts, sp_, rho, opt_.assembly);
}

BlockOperator SurfaceSolver::ps(Sign side) const {
  const ModeLayout& l = lambda_.layout;
  const Sign in = side == Sign::Plus ? Sign::Minus : Sign::Plus;
  BlockOperator r = proj_op(surf_, l, side) * beta_op(surf_, l) * inv_ * proj_op(surf_, l, in) * cplx(-1.0);
  r.kind = OpKind::PS;
  r.sp = sp_;
  return r;
}

// ---------------------------------------------------------------------------

ResolventResult mit_resolvent(Domain domain, const SurfaceSolver& solver, const std::vector<SourcePtr>& f,
                              const EvaluationSet& targets) {
  if (domain == Domain::Shell) throw std::invalid_argument("mit_resolvent: use mit_shell_resolvent for the shell");
  const SurfaceQuadrature& s = solver.surface();
  if (domain == Domain::OmegaMinusEps && s.chart_id.eps <= 0.0)
    throw std::invalid_argument("mit_resolvent: Omega_-^eps needs a parallel surface");
  if (domain != Domain::OmegaMinusEps && s.chart_id.eps != 0.0)
    throw std::invalid_argument("mit_resolvent: Omega_+/Omega_- need Sigma itself");
  const std::vector<SourcePtr> fd =
      sources_in(f, domain == Domain::OmegaPlus ? Region::OmegaPlus : Region::OmegaMinusEps);
  const SpectralPoint& sp = solver.point();

  ResolventResult res;
  res.condition = solver.condition();
  const int nt = targets.size();
  res.values.assign(nt, Spinor::Zero());
  res.free_part.assign(nt, Spinor::Zero());
  res.correction.assign(nt, Spinor::Zero());
  std::vector<int> idx;
  for (int i = 0; i < nt; ++i)
    if (in_domain(domain, s, targets.points[i])) idx.push_back(i);
  if (fd.empty() || idx.empty()) return res;

  const Eigen::VectorXcd rho = solver.density(free_trace(s, fd, sp));
  const std::vector<Spinor> lay = solver.field(pick(targets, idx), rho);
  for (size_t k = 0; k < idx.size(); ++k) {
    const int i = idx[k];
    res.free_part[i] = free_field(fd, sp, targets.points[i]);
    res.correction[i] = -lay[k];
    res.values[i] = res.free_part[i] + res.correction[i];
  }
  return res;
}

ResolventResult mit_resolvent(Domain domain, const SurfaceQuadrature& surf, const SpectralPoint& sp,
                              const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                              const ResolventOptions& opt) {
  const SurfaceSolver solver(surf, sp, opt);
  return mit_resolvent(domain, solver, f, targets);
}

ShellResult mit_shell_resolvent(const ShellSystem& sys, const SurfaceQuadrature& sigma,
                                const SurfaceQuadrature& sigma_eps, const SpectralPoint& sp,
                                const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                                const ResolventOptions& opt) {
  const std::vector<SourcePtr> fs = sources_in(f, Region::Shell);
  const double eps = sigma_eps.chart_id.eps;
  ShellResult res;
  res.condition = sys.condition;
  const int nt = targets.size();
  res.values.assign(nt, Spinor::Zero());
  res.free_part.assign(nt, Spinor::Zero());
  res.correction.assign(nt, Spinor::Zero());
  res.trace_sigma = Eigen::VectorXcd::Zero(4 * sigma.size());
  res.trace_eps = Eigen::VectorXcd::Zero(4 * sigma_eps.size());
  if (fs.empty()) return res;

  const Eigen::VectorXcd rr = sys.system_inv.apply(concat(free_trace(sigma, fs, sp), free_trace(sigma_eps, fs, sp)));
  const Eigen::VectorXcd rho = rr.head(4 * sigma.size());
  const Eigen::VectorXcd rho_e = rr.tail(4 * sigma_eps.size());
  res.trace_sigma = beta_proj(sigma, rho, +1);
  res.trace_eps = beta_proj(sigma_eps, rho_e, -1);
  res.trace_norm = std::hypot(density_norm(sigma, res.trace_sigma), density_norm(sigma_eps, res.trace_eps));

  std::vector<int> idx;
  for (int i = 0; i < nt; ++i) {
    const double t = base_t(sigma, targets.points[i]);
    if (t > 0.0 && t < eps) idx.push_back(i);
  }
  if (idx.empty()) return res;
  const std::vector<Vec3> pts = pick(targets, idx);
  const std::vector<Spinor> l1 = layer_apply(sigma, pts, sp, rho, opt.assembly);
  const std::vector<Spinor> l2 = layer_apply(sigma_eps, pts, sp, rho_e, opt.assembly);
  for (size_t k = 0; k < idx.size(); ++k) {
    const int i = idx[k];
    res.free_part[i] = free_field(fs, sp, targets.points[i]);
    res.correction[i] = -(l1[k] + l2[k]);
    res.values[i] = res.free_part[i] + res.correction[i];
  }
  return res;
}

ResolventResult lorentz_resolvent(const SurfaceSolver& solver, const std::vector<SourcePtr>& f,
                                  const EvaluationSet& targets, LorentzMode mode) {
  for (const SourcePtr& s : f)
    if (s->region() == Region::Shell) throw std::invalid_argument("lorentz_resolvent: shell-supported source");
  if (mode == LorentzMode::MitDirectSum) {
    ResolventResult a = mit_resolvent(Domain::OmegaPlus, solver, f, targets);
    const ResolventResult b = mit_resolvent(Domain::OmegaMinus, solver, f, targets);
    for (size_t i = 0; i < a.values.size(); ++i) {
      a.values[i] += b.values[i];
      a.free_part[i] += b.free_part[i];
      a.correction[i] += b.correction[i];
    }
    return a;
  }
  const SpectralPoint& sp = solver.point();
  ResolventResult res;
  res.condition = solver.condition();
  const Eigen::VectorXcd rho = solver.density(free_trace(solver.surface(), f, sp));
  const std::vector<Spinor> lay = solver.field(targets.points, rho);
  for (int i = 0; i < targets.size(); ++i) {
    res.free_part.push_back(free_field(f, sp, targets.points[i]));
    res.correction.push_back(-lay[i]);
    res.values.push_back(res.free_part.back() + res.correction.back());
  }
  return res;
}

// ---------------------------------------------------------------------------

PerturbedPlan::PerturbedPlan(const SurfaceQuadrature& sigma, cplx z, double m, double M, double eps,
                             const ResolventOptions& opt)
    : sigma_(sigma), sigma_eps_(parallel_surface(sigma, eps)), m_(m), M_(M), eps_(eps), sp_m_(z, m),
      sp_big_(z, m + M), opt_(opt) {
  if (!(M > 0.0)) throw std::invalid_argument("PerturbedPlan: M must be positive");
  inner_ = std::make_unique<SurfaceSolver>(sigma_, sp_m_, opt_);
  outer_ = std::make_unique<SurfaceSolver>(sigma_eps_, sp_m_, opt_);
  shell_ = ps_shell(sigma_, sigma_eps_, sp_big_, opt_.assembly);
  const ModeLayout& l = inner_->lambda_plus().layout;
  const int r1 = inner_->lambda_plus().trows, r2 = outer_->lambda_plus().trows;
  const BlockOperator z12 = BlockOperator::zero(l, r1, r2), z21 = BlockOperator::zero(l, r2, r1);
  a_pair_ = BlockOperator::block2(inner_->ps(Sign::Plus) * proj_op(sigma_, l, Sign::Minus), z12, z21,
                                  outer_->ps(Sign::Minus) * proj_op(sigma_eps_, l, Sign::Plus));
  b_pair_ = shell_.ps;
  const BlockOperator zp = BlockOperator::zero(l, r1 + r2, r1 + r2);
  k_ = BlockOperator::block2(zp, a_pair_, b_pair_, zp);
  upsilon_ = BlockOperator::identity(l, 2 * (r1 + r2)) - k_;
  upsilon_.sp = sp_m_;
  InverseResult inv = invert(upsilon_, opt_.max_condition);
  upsilon_inv_ = std::move(inv.inverse);
  upsilon_cond_ = inv.condition;
}

BlockOperator PerturbedPlan::xi() const {
  const int r = a_pair_.trows;
  const BlockOperator q = BlockOperator::identity(a_pair_.layout, r) - a_pair_ * b_pair_ - b_pair_ * a_pair_;
  return invert(q, opt_.max_condition).inverse;
}

std::vector<double> PerturbedPlan::pair_weights() const {
  const ModeLayout& l = inner_->lambda_plus().layout;
  std::vector<double> w = layout_weights(sigma_, l);
  const std::vector<double> we = layout_weights(sigma_eps_, l);
  w.insert(w.end(), we.begin(), we.end());
  return w;
}

PerturbedPlan::Result PerturbedPlan::solve(const std::vector<SourcePtr>& f, const EvaluationSet& targets) const {
  const std::vector<SourcePtr> fp = sources_in(f, Region::OmegaPlus);
  const std::vector<SourcePtr> fo = sources_in(f, Region::OmegaMinusEps);
  const std::vector<SourcePtr> fs = sources_in(f, Region::Shell);
  const int n1 = 4 * sigma_.size(), n2 = 4 * sigma_eps_.size();

  // Densities of the three MIT resolvents.
  const Eigen::VectorXcd rho_p = inner_->density(free_trace(sigma_, fp, sp_m_));
  const Eigen::VectorXcd rho_o = outer_->density(free_trace(sigma_eps_, fo, sp_m_));
  const Eigen::VectorXcd rs =
      shell_.system_inv.apply(concat(free_trace(sigma_, fs, sp_big_), free_trace(sigma_eps_, fs, sp_big_)));
  const Eigen::VectorXcd rho_s = rs.head(n1), rho_se = rs.tail(n2);

  Result res;
  res.rhs.resize(2 * (n1 + n2));
  res.rhs << beta_proj(sigma_, rho_p, -1), beta_proj(sigma_eps_, rho_o, +1), beta_proj(sigma_, rho_s, +1),
      beta_proj(sigma_eps_, rho_se, -1);
  res.traces = upsilon_inv_.apply(res.rhs);
  const Eigen::VectorXcd phi = res.traces.segment(0, n1), phi_e = res.traces.segment(n1, n2);
  const Eigen::VectorXcd psi = res.traces.segment(n1 + n2, n1), psi_e = res.traces.segment(2 * n1 + n2, n2);

  // Liftings of the correction: E_m P_- psi, E_m^eps P_+ psi^eps, shell E(P_+ phi, P_- phi^eps).
  const Eigen::VectorXcd lift_p = inner_->density(proj(sigma_, psi, -1));
  const Eigen::VectorXcd lift_o = outer_->density(proj(sigma_eps_, psi_e, +1));
  const Eigen::VectorXcd ls = shell_.system_inv.apply(concat(proj(sigma_, phi, +1), proj(sigma_eps_, phi_e, -1)));

  const int nt = targets.size();
  res.values.assign(nt, Spinor::Zero());
  res.mit_part.assign(nt, Spinor::Zero());
  res.correction.assign(nt, Spinor::Zero());
  std::vector<int> ip, io, is;
  for (int i = 0; i < nt; ++i) {
    const double t = base_t(sigma_, targets.points[i]);
    (t < 0.0 ? ip : (t < eps_ ? is : io)).push_back(i);
  }
  for (int i : ip) res.mit_part[i] = free_field(fp, sp_m_, targets.points[i]);
  for (int i : io) res.mit_part[i] = free_field(fo, sp_m_, targets.points[i]);
  for (int i : is) res.mit_part[i] = free_field(fs, sp_big_, targets.points[i]);
  if (!ip.empty()) {
    const std::vector<Vec3> p = pick(targets, ip);
    add_field(res.mit_part, ip, inner_->field(p, rho_p), -1.0);
    add_field(res.correction, ip, inner_->field(p, lift_p), 1.0);
  }
  if (!io.empty()) {
    const std::vector<Vec3> p = pick(targets, io);
    add_field(res.mit_part, io, outer_->field(p, rho_o), -1.0);
    add_field(res.correction, io, outer_->field(p, lift_o), 1.0);
  }
  if (!is.empty()) {
    const std::vector<Vec3> p = pick(targets, is);
    const AssemblyOptions& ao = opt_.assembly;
    add_field(res.mit_part, is, layer_apply(sigma_, p, sp_big_, rho_s, ao), -1.0);
    add_field(res.mit_part, is, layer_apply(sigma_eps_, p, sp_big_, rho_se, ao), -1.0);
    add_field(res.correction, is, layer_apply(sigma_, p, sp_big_, ls.head(n1), ao), 1.0);
    add_field(res.correction, is, layer_apply(sigma_eps_, p, sp_big_, ls.tail(n2), ao), 1.0);
  }
  for (int i = 0; i < nt; ++i) res.values[i] = res.mit_part[i] + res.correction[i];
  return res;
}

ResolventResult perturbed_resolvent(const SurfaceQuadrature& sigma, cplx z, double m, double M, double eps,
                                    const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                                    const ResolventOptions& opt) {
  const PerturbedPlan plan(sigma, z, m, M, eps, opt);
  PerturbedPlan::Result r = plan.solve(f, targets);
  ResolventResult out;
  out.values = std::move(r.values);
  out.free_part = std::move(r.mit_part);
  out.correction = std::move(r.correction);
  out.condition = plan.upsilon_condition();
  return out;
}

}  // namespace dshell

namespace dshell {

ResolventResult transmission_resolvent(const SurfaceQuadrature& sigma, cplx z, double m, double M, double eps,
                                       const std::vector<SourcePtr>& f, const EvaluationSet& targets,
                                       const ResolventOptions& opt) {
  const SurfaceQuadrature se = parallel_surface(sigma, eps);
  const SpectralPoint spm(z, m), spb(z, m + M);
  const AssemblyOptions& ao = opt.assembly;
  const BlockOperator c1 = assemble_cauchy(sigma, spm, ao);
  const BlockOperator c2 = assemble_cauchy(sigma, spb, ao);
  const BlockOperator c3 = assemble_cauchy(se, spb, ao);
  const BlockOperator c4 = assemble_cauchy(se, spm, ao);
  const BlockOperator x = assemble_surface_layer(se, sigma, spb, ao);
  const BlockOperator y = assemble_surface_layer(sigma, se, spb, ao);
  const ModeLayout& l = c1.layout;
  const int r1 = c1.trows, r2 = c3.trows;
  const BlockOperator j1 = alpha_nu_op(sigma, l) * I1, j2 = alpha_nu_op(se, l) * I1;
  const BlockOperator h1 = BlockOperator::identity(l, r1) * cplx(0.5), h2 = BlockOperator::identity(l, r2) * cplx(0.5);
  const BlockOperator z12 = BlockOperator::zero(l, r1, r2), z21 = BlockOperator::zero(l, r2, r1);

  // Rows: Omega_+ on Sigma, shell on Sigma, shell on Sigma^eps, Omega_-^eps on Sigma^eps.
  const BlockOperator e1 = c1 * j1 - h1, e2 = c2 * j1 * cplx(-1.0) - h1, e2x = x * j2;
  const BlockOperator e3y = y * j1 * cplx(-1.0), e3 = c3 * j2 - h2, e4 = c4 * j2 + h2;
  const BlockOperator top = BlockOperator::block2(e1, z12, e2, e2x);
  const BlockOperator bot = BlockOperator::block2(e3y, e3, z21, e4);

  const std::vector<SourcePtr> fp = sources_in(f, Region::OmegaPlus);
  const std::vector<SourcePtr> fo = sources_in(f, Region::OmegaMinusEps);
  const std::vector<SourcePtr> fs = sources_in(f, Region::Shell);
  const Eigen::VectorXcd wp = free_trace(sigma, fp, spm), wo = free_trace(se, fo, spm);
  const Eigen::VectorXcd ws1 = free_trace(sigma, fs, spb), ws2 = free_trace(se, fs, spb);

  const Eigen::VectorXcd rhs_top = concat(e1.apply(wp), e2.apply(ws1) + e2x.apply(ws2));
  const Eigen::VectorXcd rhs_bot = concat(e3y.apply(ws1) + e3.apply(ws2), e4.apply(wo));

  // Least squares per block on the stacked (top; bot) system.
  const Eigen::MatrixXcd Ft = to_modes(rhs_top, 2 * r1, l), Fb = to_modes(rhs_bot, 2 * r2, l);
  Eigen::MatrixXcd G(4 * (r1 + r2), l.count());
  for (int k = 0; k < l.count(); ++k) {
    Eigen::MatrixXcd A(top.block(k).rows() + bot.block(k).rows(), top.block(k).cols());
    A << top.block(k), bot.block(k);
    Eigen::VectorXcd b(A.rows());
    b << Ft.col(k), Fb.col(k);
    G.col(k) = A.colPivHouseholderQr().solve(b);
  }
  const Eigen::VectorXcd g = from_modes(G, r1 + r2, l);
  const Eigen::VectorXcd gs = g.head(wp.size()), ge = g.tail(wo.size());
  auto jmul = [](const SurfaceQuadrature& s, const Eigen::VectorXcd& v) {
    return pointwise_apply(s, v, [&](int i) { return SpinorMatrix(I1 * alpha_dot(s.nu(i))); });
  };

  ResolventResult res;
  const int nt = targets.size();
  res.values.assign(nt, Spinor::Zero());
  res.free_part.assign(nt, Spinor::Zero());
  res.correction.assign(nt, Spinor::Zero());
  std::vector<int> ip, io, is;
  for (int i = 0; i < nt; ++i) {
    const double t = base_t(sigma, targets.points[i]);
    (t < 0.0 ? ip : (t < eps ? is : io)).push_back(i);
  }
  for (int i : ip) res.free_part[i] = free_field(fp, spm, targets.points[i]);
  for (int i : io) res.free_part[i] = free_field(fo, spm, targets.points[i]);
  for (int i : is) res.free_part[i] = free_field(fs, spb, targets.points[i]);
  if (!ip.empty()) add_field(res.correction, ip, layer_apply(sigma, pick(targets, ip), spm, jmul(sigma, gs - wp), ao), 1.0);
  if (!io.empty()) add_field(res.correction, io, layer_apply(se, pick(targets, io), spm, jmul(se, ge - wo), ao), -1.0);
  if (!is.empty()) {
    const std::vector<Vec3> p = pick(targets, is);
    add_field(res.correction, is, layer_apply(sigma, p, spb, jmul(sigma, gs - ws1), ao), -1.0);
    add_field(res.correction, is, layer_apply(se, p, spb, jmul(se, ge - ws2), ao), 1.0);
  }
  for (int i = 0; i < nt; ++i) res.values[i] = res.free_part[i] + res.correction[i];
  return res;
}

}  // namespace dshell
