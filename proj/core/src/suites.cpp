#include "diracshell/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "diracshell/eigen_scan.hpp"
#include "diracshell/parametrix.hpp"
#include "diracshell/potential_ops.hpp"
#include "diracshell/resolvents.hpp"
#include "diracshell/sources.hpp"

namespace dshell {

namespace {

using Clock = std::chrono::steady_clock;
using Progress = std::function<void(const std::string&)>;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void say(const Progress& p, const std::string& s) {
  if (p) p(s);
}

Check make_check(std::string name, bool pass, double value, double limit, std::string detail = {}) {
  return Check{std::move(name), pass, value, limit, std::move(detail)};
}

// value <= limit
Check upper(std::string name, double value, double limit, std::string detail = {}) {
  return make_check(std::move(name), std::isfinite(value) && value <= limit, value, limit, std::move(detail));
}

double rel_diff(const std::vector<Spinor>& a, const std::vector<Spinor>& b) {
  double n = 0, d = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    n += (a[i] - b[i]).squaredNorm();
    d += b[i].squaredNorm();
  }
  return d > 0 ? std::sqrt(n / d) : std::sqrt(n);
}

double l2(const std::vector<Spinor>& a) {
  double n = 0;
  for (const auto& v : a) n += v.squaredNorm();
  return std::sqrt(n);
}

// Refinement passes when the error drops or is already at the floor.
bool improving(double coarse, double fine, double floor) { return fine <= floor || fine < coarse; }

std::vector<int> ladder(const SuiteConfig& cfg, int levels) {
  if (!cfg.meshes.empty()) return cfg.meshes;
  if (levels == 2) return {cfg.mesh / 2, cfg.mesh};
  return {cfg.mesh / 2, cfg.mesh, 2 * cfg.mesh};
}

double radius_scale(const SurfaceSpec& s) { return s.semiaxes.minCoeff(); }

Spinor amplitude_a() {
  Spinor a;
  a << 1.0, cplx(0, 0.5), -0.3, 0.2;
  return a;
}

Spinor amplitude_b() {
  Spinor b;
  b << 0.2, 1.0, cplx(0.4, 0.1), -0.5;
  return b;
}

// Neville extrapolation to d = 0, componentwise.
Spinor extrapolate_zero(const std::vector<double>& d, const std::vector<Spinor>& v) {
  const int n = static_cast<int>(d.size());
  Spinor out;
  for (int c = 0; c < 4; ++c) {
    std::vector<cplx> p(n);
    for (int q = 0; q < n; ++q) p[q] = v[q][c];
    for (int m = 1; m < n; ++m)
      for (int q = 0; q + m < n; ++q) p[q] = (-d[q + m] * p[q] + d[q] * p[q + 1]) / (d[q] - d[q + m]);
    out[c] = p[0];
  }
  return out;
}

// Targets around a bump centre at distances in [0.2, 1.5] sigma.
EvaluationSet bump_targets(const Vec3& c, double sigma, int count, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.2, 1.5);
  EvaluationSet t;
  for (int i = 0; i < count; ++i) {
    Vec3 d(g(gen), g(gen), g(gen));
    t.points.push_back(c + u(gen) * sigma * d.normalized());
    t.regions.push_back(Region::OmegaPlus);
  }
  return t;
}

struct Manufactured {
  std::shared_ptr<ManufacturedBump> src;
  EvaluationSet targets;
  std::vector<Spinor> exact;
};

Manufactured manufactured(const SuiteConfig& cfg, const SpectralPoint& sp) {
  const double r = radius_scale(cfg.surface);
  const Vec3 c = r * Vec3(0.1, -0.2, 0.3);
  const double sigma = 0.1 * r;
  Manufactured m;
  m.src = std::make_shared<ManufacturedBump>(c, sigma, amplitude_a(), sp, Region::OmegaPlus);
  m.targets = bump_targets(c, sigma, cfg.targets, cfg.seed);
  for (const auto& x : m.targets.points) m.exact.push_back(m.src->solution(x));
  return m;
}

std::vector<SourcePtr> interior_gaussian(const SuiteConfig& cfg, double sigma = 0.08) {
  const double r = radius_scale(cfg.surface);
  return {std::make_shared<GaussianSource>(
      std::vector<GaussianSource::Bump>{{r * Vec3(0.1, -0.2, 0.3), sigma * r, amplitude_a()}}, Region::OmegaPlus)};
}

std::vector<SourcePtr> exterior_gaussian(const SuiteConfig& cfg, const Vec3& at) {
  const double r = radius_scale(cfg.surface);
  return {std::make_shared<GaussianSource>(std::vector<GaussianSource::Bump>{{r * at, 0.08 * r, amplitude_b()}},
                                           Region::OmegaMinusEps)};
}

// Targets on both sides of Sigma, outside targets beyond every shell of the sweep.
EvaluationSet two_sided_targets(const SuiteConfig& cfg, double outer_gap) {
  const auto chart = cfg.surface.build(4).chart_id;
  const int nin = cfg.targets / 2, nout = cfg.targets - nin;
  EvaluationSet in = random_targets(chart, 0.0, nin, -0.6, -0.2, cfg.seed);
  EvaluationSet out = random_targets(chart, outer_gap, nout, outer_gap + 0.2, outer_gap + 0.8, cfg.seed + 1);
  in.points.insert(in.points.end(), out.points.begin(), out.points.end());
  in.regions.insert(in.regions.end(), out.regions.begin(), out.regions.end());
  return in;
}

void reclassify(EvaluationSet& t, const ChartDescriptor& chart, double eps) {
  for (int i = 0; i < t.size(); ++i) t.regions[i] = classify(chart, eps, t.points[i]);
}

// Spectral family of analytic densities a/|u - p| with poles off the sphere.
std::vector<Eigen::VectorXcd> analytic_family(const SurfaceQuadrature& s) {
  const std::vector<Vec3> poles = {Vec3(1.5, 0, 0), Vec3(0, 0.9, 1.2), Vec3(-0.7, -0.7, -1.1)};
  std::vector<Eigen::VectorXcd> out;
  for (size_t k = 0; k < poles.size(); ++k) {
    Spinor a;
    a << 1.0, cplx(0, 0.3) * double(k), 0.5, cplx(0.2, -0.4);
    Eigen::VectorXcd g(4 * s.size());
    for (int i = 0; i < s.size(); ++i) g.segment<4>(4 * i) = a / (s.dirs[i] - poles[k]).norm();
    out.push_back(std::move(g));
  }
  return out;
}

// max over the family of |(4 (alpha.nu) C)^2 g + g| / |g|, using the identity
// ((alpha.nu) C)^2 = -1/4.
double cauchy_identity_error(const SurfaceQuadrature& s, const BlockOperator& C) {
  const BlockOperator T = (alpha_nu_op(s, C.layout) * C) * cplx(2.0);
  double err = 0;
  for (const auto& g : analytic_family(s)) {
    const Eigen::VectorXcd e = T.apply(T.apply(g)) + g;
    err = std::max(err, density_norm(s, e) / density_norm(s, g));
  }
  return err;
}

// Near-surface Neville limit of Phi[g] from both sides vs C_{+/-} g at sample nodes.
double jump_error(const SurfaceQuadrature& s, const BlockOperator& C, const SpectralPoint& sp) {
  const BlockOperator Cp = trace_limits(C, s, Sign::Plus), Cm = trace_limits(C, s, Sign::Minus);
  const std::vector<int> nodes = {5, s.size() / 2 + 3, s.size() - 7, s.size() / 3};
  const double d0 = 0.02 * radius_scale(SurfaceSpec{"", s.chart_id.semiaxes});
  double err = 0;
  for (const auto& g : analytic_family(s)) {
    for (int side : {+1, -1}) {
      const Eigen::VectorXcd ref = (side > 0 ? Cp : Cm).apply(g);
      for (int i : nodes) {
        std::vector<Vec3> pts;
        std::vector<double> ds;
        for (int q = 0; q < 5; ++q) {
          ds.push_back(d0 * std::pow(0.5, q));
          pts.push_back(s.nodes[i] - side * ds.back() * s.nu(i));
        }
        const Spinor lim = extrapolate_zero(ds, layer_apply(s, pts, sp, g));
        const Spinor r = ref.segment<4>(4 * i);
        err = std::max(err, (lim - r).norm() / r.norm());
      }
    }
  }
  return err;
}

// ---------------------------------------------------------------------------

SuiteResult suite_clifford(const SuiteConfig& cfg, const Bands& b, const Progress&) {
  SuiteResult r;
  const SpinorMatrix I = identity4();
  double anti = 0;
  for (int j = 1; j <= 3; ++j) {
    anti = std::max(anti, (alpha(j) * beta() + beta() * alpha(j)).norm());
    for (int k = 1; k <= 3; ++k)
      anti = std::max(anti, (alpha(j) * alpha(k) + alpha(k) * alpha(j) - 2.0 * double(j == k) * I).norm());
  }
  anti = std::max(anti, (beta() * beta() - I).norm());
  anti = std::max(anti, (gamma5() + I1 * alpha(1) * alpha(2) * alpha(3)).norm());
  r.checks.push_back(upper("clifford.anticommutators", anti, b.algebra_tol));

  std::mt19937 gen(cfg.seed);
  std::normal_distribution<double> g;
  auto rv = [&] { return Vec3(g(gen), g(gen), g(gen)); };
  double spin = 0, proj = 0;
  const int n = std::max(1, cfg.states / 10);
  for (int it = 0; it < n; ++it) {
    const Vec3 X = rv(), Y = rv();
    const double sc = 1.0 + X.norm() * Y.norm();
    spin = std::max(spin, (I1 * alpha_dot(X) * alpha_dot(Y) - (I1 * X.dot(Y) * I + spin_dot(cross(X, Y)))).norm() / sc);
    // {S.X, alpha.Y} = -2 (X.Y) gamma5 (gamma5 commutes with alpha).
    spin = std::max(spin, (spin_dot(X) * alpha_dot(Y) + alpha_dot(Y) * spin_dot(X) + 2.0 * X.dot(Y) * gamma5()).norm() / sc);
    spin = std::max(spin, (spin_dot(X) * beta() - beta() * spin_dot(X)).norm() / sc);

    const Vec3 nu = rv().normalized();
    Vec3 t = rv();
    t -= t.dot(nu) * nu;
    const double m = 0.5 + std::abs(g(gen));
    const SpinorMatrix Pp = proj_pm(UnitVector3(nu), Sign::Plus), Pm = proj_pm(UnitVector3(nu), Sign::Minus);
    const SpinorMatrix Q = spin_dot(t) - I1 * m * beta() * alpha_dot(nu);
    const double st = 1.0 + t.squaredNorm() + m * m;
    spin = std::max(spin, (Q * Q - (t.squaredNorm() + m * m) * I).norm() / st);
    spin = std::max(spin, (Pp * spin_dot(t) - spin_dot(t) * Pm).norm() / sc);
    spin = std::max(spin, (Pm * spin_dot(t) - spin_dot(t) * Pp).norm() / sc);
    spin = std::max(spin, (Pp * I1 * alpha_dot(nu) - I1 * alpha_dot(nu) * Pm).norm());

    proj = std::max(proj, (Pp + Pm - I).norm());
    proj = std::max(proj, (Pp * Pp - Pp).norm());
    proj = std::max(proj, (Pm * Pm - Pm).norm());
    proj = std::max(proj, (Pp * Pm).norm());
    proj = std::max(proj, (Pp - Pp.adjoint()).norm());
    proj = std::max(proj, (Pm * beta() - beta() * Pp).norm());
    proj = std::max(proj, (proj_pm_eps(UnitVector3(nu), Sign::Plus) - Pm).norm());
  }
  r.checks.push_back(upper("clifford.spin", spin, b.algebra_tol));
  r.checks.push_back(upper("clifford.projections", proj, b.algebra_tol));
  r.table.columns = {"anticommutators", "spin_identities", "projections", "vector_pairs"};
  r.table.add({anti, spin, proj, double(n)});
  return r;
}

struct RandomStates {
  std::mt19937 gen;
  std::uniform_real_distribution<double> u{-1.0, 1.0};
  explicit RandomStates(unsigned seed) : gen(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * 0.5 * (u(gen) + 1.0); }
  SymbolState draw(const GraphChart& ch, double xi_lo, double xi_hi, double h_lo, double h_hi) {
    SymbolState s;
    s.chart = &ch;
    s.y = Vec2(0.4 * u(gen), 0.4 * u(gen));
    const double ang = M_PI * u(gen);
    s.xi = uniform(xi_lo, xi_hi) * Vec2(std::cos(ang), std::sin(ang));
    s.h = uniform(h_lo, h_hi);
    s.eps = 0.1;
    s.tau = s.eps;
    s.z = cplx(0.3, 0.5);
    return s;
  }
};

SuiteResult suite_symbols(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const std::vector<GraphChart> charts = {GraphChart::quadratic(0.7, 0.2, -0.4, 0.3, -0.2), GraphChart::sphere_cap(1.0)};
  RandomStates rs(cfg.seed);

  // Spectral identities.
  double spec = 0, expm = 0;
  for (int it = 0; it < cfg.states; ++it) {
    SymbolState s = rs.draw(charts[it % 2], 0.1, 10.0, 0.05, 1.0);
    const auto d = spectral_data(s);
    const SpinorMatrix L = L0(s);
    const SpinorMatrix I = identity4();
    const double sc = std::max(1.0, L.norm());
    const double w = s.chart->weight(s.y);
    const Vec3 xi3(s.xi[0], s.xi[1], 0.0);
    const Vec3 nu = s.chart->normal(s.y);
    double e = 0;
    e = std::max(e, (d.Pi_plus + d.Pi_minus - I).norm());
    e = std::max(e, (d.Pi_plus * d.Pi_plus - d.Pi_plus).norm());
    e = std::max(e, (d.Pi_minus * d.Pi_minus - d.Pi_minus).norm());
    e = std::max(e, (d.Pi_plus * d.Pi_minus).norm());
    e = std::max(e, (L * d.Pi_plus - d.rho_plus * d.Pi_plus).norm() / sc);
    e = std::max(e, (L * d.Pi_minus - d.rho_minus * d.Pi_minus).norm() / sc);
    e = std::max(e, (L - (I1 * nu.dot(xi3) / w * I + d.lambda / w * (d.Pi_plus - d.Pi_minus))).norm() / sc);
    e = std::max(e, (d.P_plus * d.Pi_plus * d.P_plus - d.k_plus * d.P_plus).norm());
    e = std::max(e, (d.P_minus * d.Pi_minus * d.P_minus - d.k_plus * d.P_minus).norm());
    e = std::max(e, (d.P_plus * d.Pi_minus * d.P_minus + d.Theta * d.P_minus).norm());
    e = std::max(e, (d.P_minus * d.Pi_plus * d.P_plus - d.Theta * d.P_plus).norm());
    e = std::max(e, std::abs(d.k_plus + d.k_minus - 1.0));
    spec = std::max(spec, e);

    // Exponential against scaling-and-squaring, exponent |h^-1 s L0| <= 4.
    s.tau = s.eps + 4.0 * s.h / std::max(1.0, L.norm()) * rs.uniform(0.05, 1.0);
    const SpinorMatrix ref = (L * ((s.tau - s.eps) / s.h)).exp();
    expm = std::max(expm, (exp_L0(s) - ref).norm() / std::max(1.0, ref.norm()));
  }
  r.checks.push_back(upper("symbols.spectral", spec, b.spectral_tol, std::to_string(cfg.states) + " states"));
  r.checks.push_back(upper("symbols.expm", expm, b.expm_tol));

  // Ellipticity: min(Re rho_+, -Re rho_-) / <xi> over a |xi| sweep.
  std::vector<double> cs;
  for (double mag : {1.0, 10.0, 100.0, 1000.0}) {
    double c = INFINITY;
    for (int it = 0; it < 50; ++it) {
      SymbolState s = rs.draw(charts[it % 2], mag, mag, 0.5, 0.5);
      const auto d = spectral_data(s);
      c = std::min(c, std::min(d.rho_plus.real(), -d.rho_minus.real()) / japanese(s.xi));
    }
    cs.push_back(c);
    r.table.add({mag, c});
  }
  const double cmin = *std::min_element(cs.begin(), cs.end()), cmax = *std::max_element(cs.begin(), cs.end());
  r.checks.push_back(make_check("symbols.ellipticity", cmin > 0 && cmax / cmin <= 2.0, cmin, 0.0,
                                "c in [" + fmt(cmin) + ", " + fmt(cmax) + "] over |xi| = 1..1e3"));
  say(progress, "spectral identities " + fmt(spec) + ", expm " + fmt(expm));

  // Transport residuals at two steps.
  const SymbolField a0 = A0, a1 = A1, a2 = A2;
  const SymbolField t1 = [](const SymbolState& t) { return transport_A(t, 1).eval(t.offset()); };
  const SymbolField t2 = [](const SymbolState& t) { return transport_A(t, 2).eval(t.offset()); };
  struct Row {
    std::string name;
    int j;
    const SymbolField* f;
    const SymbolField* p1;
    const SymbolField* p2;
    bool closed_form;
    double worst_ratio = INFINITY;
    double worst_fine = 0;
  };
  std::vector<Row> rows = {{"A0", 0, &a0, &a0, &a0, true},
                           {"A1", 1, &a1, &a0, &a0, true},
                           {"A2", 2, &a2, &a1, &a0, true},
                           {"A1.transport", 1, &t1, &a0, &a0, false},
                           {"A2.transport", 2, &t2, &t1, &a0, false}};
  const double step = 1e-2;
  double bc = 0, cond_disp = 0;
  for (int it = 0; it < cfg.residual_states; ++it) {
    SymbolState s = rs.draw(charts[it % 2], 0.5, 5.0, 0.1, 1.0);
    s.tau = s.eps + s.h * rs.uniform(0.1, 1.5);
    for (auto& row : rows) {
      // The closed forms carry the normalization with source scale h.
      const double scale = row.closed_form && row.j >= 1 ? s.h : 1.0;
      ResidualOrder o;
      o.coarse = transport_residual(row.j, *row.f, *row.p1, *row.p2, s, step, scale).relative();
      o.fine = transport_residual(row.j, *row.f, *row.p1, *row.p2, s, step / 2, scale).relative();
      if (o.fine > b.residual_floor) row.worst_ratio = std::min(row.worst_ratio, o.ratio());
      row.worst_fine = std::max(row.worst_fine, o.fine);
    }
    // Boundary conditions.
    const SymbolState s0 = s.with_tau(s.eps);
    const auto d = spectral_data(s0);
    bc = std::max(bc, (d.P_plus * A0(s0) - d.P_plus).norm());
    bc = std::max(bc, (d.P_plus * A1(s0)).norm() / std::max(1.0, A1(s0).norm()));
    bc = std::max(bc, (d.P_plus * A2(s0)).norm() / std::max(1.0, A2(s0).norm()));

    // Pi_+ A1(eps) against its display, derivatives of B00 and rho_- taken here.
    const auto m = coefficient_matrices(s0);
    const cplx delta = d.rho_minus - d.rho_plus;
    const SpinorMatrix B = B00(s0);
    SpinorMatrix da = (m.a_mult + s0.xi[0] * m.b[0] + s0.xi[1] * m.b[1]) * B;
    const std::function<cplx(const SymbolState&)> rho_m = [](const SymbolState& t) { return spectral_data(t).rho_minus; };
    for (int k = 0; k < 2; ++k) {
      da -= I1 * alpha(k + 1) * dy(B00, s0, k);
      da += I1 * alpha(k + 1) * dy_scalar(rho_m, s0, k) / delta * B;
    }
    const SpinorMatrix disp = s0.h * d.Pi_plus * m.a0 / delta * da;
    const SpinorMatrix got = d.Pi_plus * A1(s0);
    cond_disp = std::max(cond_disp, (got - disp).norm() / std::max(1e-300, disp.norm()));
  }
  for (const auto& row : rows) {
    const bool pass = row.worst_ratio >= b.residual_ratio || row.worst_fine <= b.residual_floor;
    r.checks.push_back(make_check("residual." + row.name, pass, row.worst_ratio, b.residual_ratio,
                                  "worst fine-step relative residual " + fmt(row.worst_fine) +
                                      (row.closed_form ? "" : " (informational)")));
  }
  r.checks.push_back(upper("boundary.P+Aj", bc, b.boundary_tol));
  r.checks.push_back(upper("boundary.Pi+A1", cond_disp, 1e-6, "display with finite-difference derivatives"));
  say(progress, "residuals at " + std::to_string(cfg.residual_states) + " states");

  // Order report.
  double worst = 0;
  for (const auto& ch : charts) {
    SymbolState base;
    base.chart = &ch;
    base.y = Vec2(0.2, -0.1);
    base.eps = 0.1;
    base.tau = 0.1;
    base.z = cplx(0.3, 0.5);
    for (const auto& o : symbol_order_report(base, Vec2(0.6, 0.8))) {
      worst = std::max({worst, std::abs(o.xi_order - o.expected_xi), std::abs(o.h_order - o.expected_h)});
      r.notes.push_back(ch.describe() + " " + o.name + ": xi-order " + fmt(o.xi_order) + " (expected " +
                        fmt(o.expected_xi) + "), h-order " + fmt(o.h_order) + " (expected " + fmt(o.expected_h) + ")");
    }
  }
  r.checks.push_back(upper("order.report", worst, b.order_tol, "largest exponent deviation over 2 charts"));
  r.table.columns = {"xi_magnitude", "ellipticity_c"};
  return r;
}

SuiteResult suite_cauchy(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const SpectralPoint sp(cfg.z, cfg.m);
  r.table.columns = {"N", "family_error", "discrete_norm"};
  std::vector<double> errs;
  for (int N : ladder(cfg, 3)) {
    const SurfaceQuadrature s = cfg.surface.build(N);
    const BlockOperator C = assemble_cauchy(s, sp);
    const double e = cauchy_identity_error(s, C);
    const BlockOperator T = (alpha_nu_op(s, C.layout) * C) * cplx(2.0);
    const auto w = layout_weights(s, C.layout);
    const double full = (T * T + BlockOperator::identity(C.layout, C.trows)).weighted_norm(w, w);
    errs.push_back(e);
    r.table.add({double(N), e, full});
    say(progress, "N=" + std::to_string(N) + " identity error " + fmt(e) + " (discrete norm " + fmt(full) + ")");
  }
  double worst = INFINITY;
  for (size_t i = 1; i < errs.size(); ++i) worst = std::min(worst, errs[i - 1] / errs[i]);
  r.checks.push_back(make_check("cauchy.refine", worst >= b.refine_ratio, worst, b.refine_ratio,
                                "smallest error ratio per mesh doubling"));
  return r;
}

SuiteResult suite_jump(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const SpectralPoint sp(cfg.z, cfg.m);
  r.table.columns = {"N", "cauchy_error", "jump_error", "exact_jump_defect"};
  std::vector<int> meshes = cfg.meshes.empty() ? std::vector<int>{cfg.mesh / 2, cfg.mesh} : cfg.meshes;
  for (size_t q = 0; q < meshes.size(); ++q) {
    const int N = meshes[q];
    const SurfaceQuadrature s = cfg.surface.build(N);
    const BlockOperator C = assemble_cauchy(s, sp);
    const double ce = cauchy_identity_error(s, C);
    const double je = jump_error(s, C, sp);
    // C_+ - C_- = -i alpha.nu, exact by construction.
    const BlockOperator D = trace_limits(C, s, Sign::Plus) - trace_limits(C, s, Sign::Minus) +
                            alpha_nu_op(s, C.layout) * I1;
    const double exact = D.max_abs();
    r.table.add({double(N), ce, je, exact});
    say(progress, "N=" + std::to_string(N) + " jump " + fmt(je) + " cauchy " + fmt(ce));
    const bool main = q + 1 == meshes.size();
    if (main) {
      r.checks.push_back(upper("jump.vs_cauchy", je / ce, b.jump_factor,
                               "jump " + fmt(je) + ", cauchy " + fmt(ce) + " at N=" + std::to_string(N)));
      r.checks.push_back(upper("jump.exact", exact, b.algebra_tol));
    }
  }
  return r;
}

// Fourth-order finite-difference residual of (D_m - z) u - f at the targets.
double pde_residual(const std::function<std::vector<Spinor>(const EvaluationSet&)>& u,
                    const std::vector<SourcePtr>& f, const SpectralPoint& sp, const EvaluationSet& targets) {
  const double hstep = 1e-3;
  const double off[4] = {-2, -1, 1, 2};
  const double wt[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  EvaluationSet pts;
  for (const auto& x : targets.points) {
    pts.points.push_back(x);
    for (int k = 0; k < 3; ++k)
      for (double o : off) pts.points.push_back(x + o * hstep * Vec3::Unit(k));
  }
  pts.regions.assign(pts.points.size(), targets.regions.empty() ? Region::OmegaPlus : targets.regions[0]);
  const auto v = u(pts);
  double num = 0, den = 0;
  const int stride = 13;
  for (int i = 0; i < targets.size(); ++i) {
    const Spinor& c = v[i * stride];
    Spinor du = Spinor::Zero();
    for (int k = 0; k < 3; ++k) {
      Spinor g = Spinor::Zero();
      for (int q = 0; q < 4; ++q) g += wt[q] * v[i * stride + 1 + 4 * k + q];
      du += -I1 * alpha(k + 1) * (g / hstep);
    }
    Spinor fx = Spinor::Zero();
    for (const auto& s : f) fx += s->value(targets.points[i]);
    const Spinor res = du + sp.m * beta() * c - sp.z * c - fx;
    num += res.squaredNorm();
    den += fx.squaredNorm() + (sp.m * beta() * c).squaredNorm() + du.squaredNorm();
  }
  return std::sqrt(num / den);
}

SuiteResult suite_mit(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const SpectralPoint sp(cfg.z, cfg.m);
  const Manufactured man = manufactured(cfg, sp);
  r.table.columns = {"N", "manufactured_error", "condition"};
  std::vector<double> errs;
  const auto meshes = ladder(cfg, 2);
  std::unique_ptr<SurfaceSolver> last;
  for (int N : meshes) {
    last = std::make_unique<SurfaceSolver>(cfg.surface.build(N), sp);
    const auto res = mit_resolvent(Domain::OmegaPlus, *last, {man.src}, man.targets);
    errs.push_back(rel_diff(res.values, man.exact));
    r.table.add({double(N), errs.back(), last->condition()});
    say(progress, "N=" + std::to_string(N) + " manufactured error " + fmt(errs.back()));
  }
  r.checks.push_back(upper("mit.manufactured", errs.back(), b.manufactured_tol));
  r.checks.push_back(make_check("mit.improving", improving(errs.front(), errs.back(), b.error_floor), errs.back(),
                                errs.front(), "coarse " + fmt(errs.front()) + ", floor " + fmt(b.error_floor)));

  // Interior equation and MIT condition for a generic interior source.
  const auto f = interior_gaussian(cfg, 0.15);
  const auto chart = last->surface().chart_id;
  EvaluationSet inner = random_targets(chart, 0.0, cfg.targets, -0.7, -0.3, cfg.seed + 3);
  const double pde = pde_residual(
      [&](const EvaluationSet& t) { return mit_resolvent(Domain::OmegaPlus, *last, f, t).values; }, f, sp, inner);
  r.checks.push_back(upper("mit.pde_residual", pde, b.pde_tol));

  const SurfaceQuadrature& s = last->surface();
  double bc = 0;
  for (int i : {7, s.size() / 2 + 1, s.size() - 9}) {
    std::vector<double> ds;
    EvaluationSet pts;
    for (int q = 0; q < 5; ++q) {
      ds.push_back(0.02 * std::pow(0.5, q));
      pts.points.push_back(s.nodes[i] - ds.back() * s.nu(i));
      pts.regions.push_back(Region::OmegaPlus);
    }
    const Spinor t = extrapolate_zero(ds, mit_resolvent(Domain::OmegaPlus, *last, f, pts).values);
    bc = std::max(bc, (proj_pm_unchecked(s.nu(i), -1) * t).norm() / t.norm());
  }
  r.checks.push_back(upper("mit.boundary_condition", bc, b.confinement_tol, "|P_- t u| / |t u| by extrapolation"));

  const auto zero = mit_resolvent(Domain::OmegaPlus, *last, {}, man.targets);
  r.checks.push_back(upper("mit.zero_source", l2(zero.values), 0.0));
  return r;
}

SuiteResult suite_lorentz(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const SpectralPoint sp(cfg.z, cfg.m);
  const Manufactured man = manufactured(cfg, sp);
  auto f = interior_gaussian(cfg);
  const auto fo = exterior_gaussian(cfg, Vec3(1.2, 0.8, -0.9));
  f.insert(f.end(), fo.begin(), fo.end());
  const EvaluationSet T = two_sided_targets(cfg, 0.0);
  r.table.columns = {"N", "manufactured_error", "mode_difference", "leak"};
  std::vector<double> merr, mdiff;
  double leak = 0;
  for (int N : ladder(cfg, 2)) {
    const SurfaceSolver sol(cfg.surface.build(N), sp);
    merr.push_back(rel_diff(lorentz_resolvent(sol, {man.src}, man.targets, LorentzMode::GlobalKrein).values, man.exact));
    const auto g = lorentz_resolvent(sol, f, T, LorentzMode::GlobalKrein);
    const auto d = lorentz_resolvent(sol, f, T, LorentzMode::MitDirectSum);
    mdiff.push_back(rel_diff(g.values, d.values));
    // Exterior source seen at interior targets.
    const auto ext = lorentz_resolvent(sol, fo, T, LorentzMode::GlobalKrein);
    double in = 0, out = 0;
    for (int i = 0; i < T.size(); ++i)
      (T.regions[i] == Region::OmegaPlus ? in : out) += ext.values[i].squaredNorm();
    leak = std::sqrt(in / out);
    r.table.add({double(N), merr.back(), mdiff.back(), leak});
    say(progress, "N=" + std::to_string(N) + " manufactured " + fmt(merr.back()) + " modes " + fmt(mdiff.back()));
  }
  r.checks.push_back(upper("lorentz.manufactured", merr.back(), b.manufactured_tol));
  r.checks.push_back(make_check("lorentz.improving", improving(merr.front(), merr.back(), b.error_floor), merr.back(),
                                merr.front()));
  r.checks.push_back(upper("lorentz.modes", mdiff.back(), b.confinement_tol));
  r.checks.push_back(make_check("lorentz.modes_improving", improving(mdiff.front(), mdiff.back(), b.error_floor),
                                mdiff.back(), mdiff.front()));
  r.checks.push_back(upper("lorentz.confinement", leak, b.confinement_tol, "interior/exterior field of an exterior source"));
  return r;
}

RateFit banded(const std::vector<std::pair<double, double>>& pts, double lo, double hi, double r2) {
  RateFit f = fit_rate(pts);
  apply_band(f, lo, hi, r2);
  return f;
}

void add_fit(SuiteResult& r, const std::string& name, RateFit f) {
  r.checks.push_back(make_check("fit." + name, f.pass, f.slope, f.band_hi, describe(f)));
  r.fits.push_back({name, std::move(f)});
}

SuiteResult suite_shell(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const int N = cfg.mesh;
  const SurfaceQuadrature S = cfg.surface.build(N);
  r.table.columns = {"M", "eps", "resolvent_ratio", "trace_ratio", "condition"};
  std::vector<std::pair<double, double>> pn, pt;
  for (double M : cfg.masses) {
    const double eps = 1.0 / M;
    const SurfaceQuadrature Se = parallel_surface(S, eps);
    const SpectralPoint sp(cfg.z, cfg.m + M);
    ResolventOptions o;
    o.assembly.modes = {N};  // the source is a single m_j = 1/2 mode
    const ShellSystem sys = ps_shell(S, Se, sp, o.assembly);
    auto chi = [eps](double t) { return std::pow(std::sin(M_PI * t / eps), 2); };
    auto src = std::make_shared<ShellLayerSource>(S, eps, 0, 0, chi, [](double c) { return 1.0 + 0.5 * c; });
    const ShellQuadrature sq = shell_quadrature(S, eps, cfg.shell_radial);
    EvaluationSet T;
    std::vector<double> w;
    for (int a = 0; a < N; ++a)
      for (int k = 0; k < cfg.shell_radial; ++k) {
        T.points.push_back(sq.point(a * 2 * N, k));
        T.regions.push_back(Region::Shell);
        w.push_back(sq.weight(a * 2 * N, k) * 2 * N);
      }
    const auto res = mit_shell_resolvent(sys, S, Se, sp, {src}, T, o);
    double nu = 0, nf = 0;
    for (int i = 0; i < T.size(); ++i) {
      nu += w[i] * res.values[i].squaredNorm();
      nf += w[i] * src->value(T.points[i]).squaredNorm();
    }
    const double ratio = std::sqrt(nu / nf), trace = res.trace_norm / std::sqrt(nf);
    pn.emplace_back(M, ratio);
    pt.emplace_back(M, trace);
    r.table.add({M, eps, ratio, trace, sys.condition});
    say(progress, "M=" + fmt(M) + " |u|/|f| " + fmt(ratio) + " trace/|f| " + fmt(trace));
  }
  add_fit(r, "shell_resolvent", banded(pn, -INFINITY, b.shell_slope_max, b.min_r2));
  add_fit(r, "shell_trace", banded(pt, -0.5 - b.rate_halfwidth, -0.5 + b.rate_halfwidth, b.min_r2));
  return r;
}

SuiteResult suite_eps_rate(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const SpectralPoint sp(cfg.z, cfg.m);
  const SurfaceQuadrature S = cfg.surface.build(cfg.mesh);
  const double emax = *std::max_element(cfg.eps.begin(), cfg.eps.end());
  const auto f = exterior_gaussian(cfg, Vec3(0.3, -0.4, 1.7));
  const EvaluationSet T = random_targets(S.chart_id, emax, cfg.targets, emax + 0.2, emax + 1.0, cfg.seed);
  const SurfaceSolver s0(S, sp);
  const auto u0 = mit_resolvent(Domain::OmegaMinus, s0, f, T);
  // Lifting density: P_+ of a smooth spinor field on Sigma.
  Eigen::VectorXcd g(4 * S.size());
  for (int i = 0; i < S.size(); ++i) {
    const Vec3 u = S.dirs[i];
    Spinor h;
    h << 1.0 + 0.3 * u[2], cplx(0.2, 0.1) * u[0], 0.5 * u[1] * u[2], I1 * (0.4 - u[0] * u[0]);
    g.segment<4>(4 * i) = proj_pm_unchecked(S.nu(i), +1) * h;
  }
  const auto l0 = s0.field(T.points, s0.density(g));

  r.table.columns = {"eps", "mit_difference", "lifting_difference"};
  std::vector<std::pair<double, double>> pm, pl;
  for (double e : cfg.eps) {
    const SurfaceQuadrature Se = parallel_surface(S, e);
    const SurfaceSolver se(Se, sp);
    const double dm = rel_diff(mit_resolvent(Domain::OmegaMinusEps, se, f, T).values, u0.values);
    const double dl = rel_diff(se.field(T.points, se.density(transform_eps(S, Se, g))), l0);
    pm.emplace_back(e, dm);
    pl.emplace_back(e, dl);
    r.table.add({e, dm, dl});
    say(progress, "eps=" + fmt(e) + " mit " + fmt(dm) + " lifting " + fmt(dl));
  }
  add_fit(r, "mit_exterior", banded(pm, 1 - b.rate_halfwidth, 1 + b.rate_halfwidth, b.min_r2));
  add_fit(r, "lifting", banded(pl, 1 - b.rate_halfwidth, 1 + b.rate_halfwidth, b.min_r2));
  return r;
}

std::vector<double> pair_weights(const SurfaceQuadrature& S, const SurfaceQuadrature& Se, const ModeLayout& l) {
  auto w = layout_weights(S, l);
  const auto we = layout_weights(Se, l);
  w.insert(w.end(), we.begin(), we.end());
  return w;
}

SuiteResult suite_mass_rate(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const SurfaceQuadrature S = cfg.surface.build(cfg.mesh);
  r.table.columns = {"M", "eps", "ps_norm", "cross_norm", "condition"};
  std::vector<std::pair<double, double>> pts;
  for (double M : cfg.masses) {
    const double eps = 1.0 / M;
    const SurfaceQuadrature Se = parallel_surface(S, eps);
    const ShellSystem sh = ps_shell(S, Se, SpectralPoint(cfg.z, cfg.m + M));
    const auto w = pair_weights(S, Se, sh.ps.layout);
    const double n = sh.ps.weighted_norm(w, w);
    const double x = sh.cross_x.weighted_norm(layout_weights(S, sh.ps.layout), layout_weights(Se, sh.ps.layout));
    pts.emplace_back(M, n);
    r.table.add({M, eps, n, x, sh.condition});
    say(progress, "M=" + fmt(M) + " |A_{m+M}| " + fmt(n) + " cross " + fmt(x));
  }
  add_fit(r, "ps_norm", banded(pts, -1 - b.rate_halfwidth, -1 + b.rate_halfwidth, b.min_r2));
  return r;
}

SuiteResult suite_full_rate(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const SpectralPoint sp(cfg.z, cfg.m);
  const Manufactured man = manufactured(cfg, sp);
  const auto f = interior_gaussian(cfg);
  const double emax = 1.0 / *std::min_element(cfg.masses.begin(), cfg.masses.end());
  EvaluationSet T = two_sided_targets(cfg, emax);
  const SurfaceQuadrature S = cfg.surface.build(cfg.mesh);

  r.table.columns = {"M", "eps", "manufactured_error", "correction", "mit_part", "xi_norm", "ps_norm", "condition"};
  std::vector<double> merr, xis;
  std::vector<std::pair<double, double>> pc, pp;
  for (double M : cfg.masses) {
    const double eps = 1.0 / M;
    const auto t0 = Clock::now();
    const PerturbedPlan P(S, cfg.z, cfg.m, M, eps);
    EvaluationSet manT = man.targets;
    reclassify(manT, S.chart_id, eps);
    merr.push_back(rel_diff(P.solve({man.src}, manT).values, man.exact));
    reclassify(T, S.chart_id, eps);
    const auto res = P.solve(f, T);
    const double corr = l2(res.correction), mit = l2(res.mit_part);
    const auto w = P.pair_weights();
    const double xi = P.xi().weighted_norm(w, w);
    const double ps = P.shell().ps.weighted_norm(w, w);
    xis.push_back(xi);
    pc.emplace_back(M, corr);
    pp.emplace_back(M, ps);
    r.table.add({M, eps, merr.back(), corr, mit, xi, ps, P.upsilon_condition()});
    say(progress, "M=" + fmt(M) + " manufactured " + fmt(merr.back()) + " correction " + fmt(corr) + " |Xi| " +
                      fmt(xi) + " (" + fmt(seconds_since(t0)) + " s)");
  }
  // Refinement of the manufactured check at the smallest mass.
  {
    const double M = cfg.masses.front();
    const PerturbedPlan P(cfg.surface.build(cfg.mesh / 2), cfg.z, cfg.m, M, 1.0 / M);
    EvaluationSet manT = man.targets;
    reclassify(manT, S.chart_id, 1.0 / M);
    const double coarse = rel_diff(P.solve({man.src}, manT).values, man.exact);
    r.checks.push_back(make_check("perturbed.improving", improving(coarse, merr.front(), b.error_floor), merr.front(),
                                  coarse, "N=" + std::to_string(cfg.mesh / 2) + " vs N=" + std::to_string(cfg.mesh)));
  }
  const double emaxm = *std::max_element(merr.begin(), merr.end()), eminm = *std::min_element(merr.begin(), merr.end());
  r.checks.push_back(upper("perturbed.manufactured", emaxm, b.manufactured_tol));
  const double spread = eminm > b.error_floor ? emaxm / eminm : 1.0;
  r.checks.push_back(upper("perturbed.mass_spread", spread, b.mass_spread_factor,
                           "errors in [" + fmt(eminm) + ", " + fmt(emaxm) + "], floor " + fmt(b.error_floor)));
  add_fit(r, "correction", banded(pc, -1 - b.rate_halfwidth, -1 + b.rate_halfwidth, b.min_r2));
  add_fit(r, "ps_norm", banded(pp, -1 - b.rate_halfwidth, -1 + b.rate_halfwidth, b.min_r2));
  const double xr = *std::max_element(xis.begin(), xis.end()) / *std::min_element(xis.begin(), xis.end());
  r.checks.push_back(upper("xi.uniform", xr, b.xi_ratio_max));
  return r;
}

SuiteResult suite_eigenscan(const SuiteConfig& cfg, const Bands& b, const Progress& progress) {
  SuiteResult r;
  const auto grid = scan_grid(cfg.scan_lo, cfg.scan_hi, cfg.scan_points, cfg.m);
  r.table.columns = {"N", "E", "smin", "smax", "mode"};
  std::vector<std::vector<double>> dips;
  bool gap_clear = true, above = true;
  for (int N : ladder(cfg, 2)) {
    ScanOptions o;
    if (N > 16 && cfg.scan_mode_window > 0)
      for (int j = N - cfg.scan_mode_window / 2; j < N - cfg.scan_mode_window / 2 + cfg.scan_mode_window; ++j)
        o.assembly.modes.push_back(j);
    const EigenScan sc = mit_eigen_scan(cfg.surface.build(N), cfg.m, grid, o);
    for (const auto& p : sc.grid) r.table.add({double(N), p.E, p.smin, p.smax, double(p.mode)});
    std::vector<double> d;
    int in_gap = 0, upper_band = 0;
    for (const auto& dip : sc.dips) {
      d.push_back(dip.E);
      if (std::abs(dip.E) < cfg.m) ++in_gap;
      if (dip.E > cfg.m && dip.E < 3 * cfg.m) ++upper_band;
    }
    gap_clear = gap_clear && in_gap == 0;
    above = above && upper_band > 0;
    std::string list;
    for (double e : d) list += " " + fmt(e);
    r.notes.push_back("N=" + std::to_string(N) + " dips:" + list);
    say(progress, "N=" + std::to_string(N) + " dips:" + list);
    dips.push_back(std::move(d));
  }
  r.checks.push_back(make_check("scan.gap_empty", gap_clear, 0, 0, "no dip with |E| < m"));
  r.checks.push_back(make_check("scan.upper_dip", above, 0, 0, "a dip in (m, 3m) at every mesh"));
  // Every dip of the fine scan in (m, 3m) has a partner on the coarse scan.
  double worst = 0;
  for (double e : dips.back()) {
    if (!(e > cfg.m && e < 3 * cfg.m)) continue;
    double best = INFINITY;
    for (double c : dips.front()) best = std::min(best, std::abs(c - e));
    worst = std::max(worst, best);
  }
  r.checks.push_back(upper("scan.stable", worst, b.dip_match));
  if (cfg.surface.kind == "sphere" && cfg.surface.semiaxes[0] == 1.0) {
    const auto ball = ball_swave_eigenvalues(cfg.m, 1.0, cfg.m, 3 * cfg.m);
    if (!ball.empty()) {
      double best = INFINITY;
      for (double e : dips.back()) best = std::min(best, std::abs(e - ball.front()));
      r.checks.push_back(upper("scan.ball_oracle", best, b.dip_match, "s-wave root " + fmt(ball.front())));
    }
  }
  return r;
}

}  // namespace

SurfaceQuadrature SurfaceSpec::build(int N) const {
  if (kind == "sphere") return make_sphere(semiaxes[0], N);
  if (kind == "spheroid" || kind == "ellipsoid") return make_ellipsoid(semiaxes, N);
  throw std::invalid_argument("unknown surface kind '" + kind + "'");
}

std::string SurfaceSpec::describe() const {
  std::ostringstream os;
  os << kind << "(" << semiaxes[0] << "," << semiaxes[1] << "," << semiaxes[2] << ")";
  return os.str();
}

namespace {
bool geometric(const std::vector<double>& v) {
  if (v.size() < 4) return false;
  const double q = v[1] / v[0];
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] <= 0 || std::abs(v[i] / v[i - 1] / q - 1.0) > 1e-9) return false;
  return q > 0 && q != 1.0;
}
}  // namespace

void SuiteConfig::validate(const std::string& suite) const {
  auto fail = [&](const std::string& m) { throw std::invalid_argument(suite + ": " + m); };
  if (mesh < 4) fail("mesh must be >= 4");
  for (int n : meshes)
    if (n < 4) fail("meshes must be >= 4");
  if (surface.kind != "sphere" && surface.kind != "spheroid" && surface.kind != "ellipsoid")
    fail("unknown surface kind '" + surface.kind + "'");
  if (surface.kind == "sphere" && (surface.semiaxes[1] != surface.semiaxes[0] || surface.semiaxes[2] != surface.semiaxes[0]))
    fail("sphere needs equal semiaxes");
  if (surface.semiaxes.minCoeff() <= 0) fail("semiaxes must be positive");
  if (m <= 0) fail("mass m must be positive");
  if (suite == "eps-rate") {
    if (eps.empty()) fail("empty eps sweep");
    if (!geometric(eps)) fail("eps sweep must be geometric with >= 4 points");
  }
  if (suite == "shell" || suite == "mass-rate" || suite == "full-rate") {
    if (masses.empty()) fail("empty mass sweep");
    if (!geometric(masses)) fail("mass sweep must be geometric with >= 4 points");
    for (double M : masses)
      if (2 * std::abs(z) >= m + M) fail("need 2|z| < m + M");
  }
  if ((suite == "mit" || suite == "lorentz" || suite == "full-rate") && targets < 1) fail("targets must be >= 1");
  if (suite == "symbols" && (states < 1 || residual_states < 1)) fail("state counts must be >= 1");
  if (suite == "eigenscan" && (scan_points < 3 || scan_lo >= scan_hi)) fail("bad scan grid");
  if (suite == "shell" && shell_radial < 1) fail("shell_radial must be >= 1");
}

bool SuiteResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const Check* SuiteResult::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const RateFit* SuiteResult::fit(const std::string& name) const {
  for (const auto& f : fits)
    if (f.name == name) return &f.fit;
  return nullptr;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {"clifford", "symbols",   "cauchy",    "jump",      "mit",      "lorentz",
                                               "shell",    "eps-rate",  "mass-rate", "full-rate", "eigenscan"};
  return ids;
}

bool is_suite(const std::string& id) {
  const auto& ids = suite_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

SuiteResult run_suite(const std::string& id, const SuiteConfig& cfg, const Bands& bands, const Progress& progress) {
  if (!is_suite(id)) throw std::invalid_argument("unknown suite '" + id + "'");
  cfg.validate(id);
  const auto t0 = Clock::now();
  SuiteResult r;
  try {
    if (id == "clifford") r = suite_clifford(cfg, bands, progress);
    else if (id == "symbols") r = suite_symbols(cfg, bands, progress);
    else if (id == "cauchy") r = suite_cauchy(cfg, bands, progress);
    else if (id == "jump") r = suite_jump(cfg, bands, progress);
    else if (id == "mit") r = suite_mit(cfg, bands, progress);
    else if (id == "lorentz") r = suite_lorentz(cfg, bands, progress);
    else if (id == "shell") r = suite_shell(cfg, bands, progress);
    else if (id == "eps-rate") r = suite_eps_rate(cfg, bands, progress);
    else if (id == "mass-rate") r = suite_mass_rate(cfg, bands, progress);
    else if (id == "full-rate") r = suite_full_rate(cfg, bands, progress);
    else r = suite_eigenscan(cfg, bands, progress);
  } catch (const std::exception& e) {
    throw std::runtime_error("suite " + id + " (mesh " + std::to_string(cfg.mesh) + "): " + e.what());
  }
  r.suite = id;
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace dshell
