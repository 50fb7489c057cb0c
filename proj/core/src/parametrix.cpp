#include "diracshell/parametrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "diracshell/ratefit.hpp"

namespace dshell {

// ---------------------------------------------------------------- charts

GraphChart GraphChart::flat() { return GraphChart{}; }

GraphChart GraphChart::sphere_cap(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("sphere_cap: radius must be positive");
  GraphChart c;
  c.kind_ = Kind::SphereCap;
  c.R_ = radius;
  return c;
}

GraphChart GraphChart::quadratic(double q11, double q12, double q22, double q111, double q222) {
  GraphChart c;
  c.kind_ = Kind::Quadratic;
  c.q11_ = q11;
  c.q12_ = q12;
  c.q22_ = q22;
  c.q111_ = q111;
  c.q222_ = q222;
  return c;
}

double GraphChart::domain_radius() const {
  return kind_ == Kind::SphereCap ? R_ : std::numeric_limits<double>::infinity();
}

static double cap_root(double R, const Vec2& y) {
  const double s2 = R * R - y.squaredNorm();
  if (s2 <= 0) throw std::domain_error("sphere_cap: y outside the chart");
  return std::sqrt(s2);
}

double GraphChart::chi(const Vec2& y) const {
  switch (kind_) {
    case Kind::Flat: return 0.0;
    case Kind::SphereCap: return cap_root(R_, y) - R_;
    case Kind::Quadratic:
      return 0.5 * q11_ * y[0] * y[0] + q12_ * y[0] * y[1] + 0.5 * q22_ * y[1] * y[1] +
             q111_ * y[0] * y[0] * y[0] / 6.0 + q222_ * y[1] * y[1] * y[1] / 6.0;
  }
  return 0.0;
}

Vec2 GraphChart::grad(const Vec2& y) const {
  switch (kind_) {
    case Kind::Flat: return Vec2::Zero();
    case Kind::SphereCap: return -y / cap_root(R_, y);
    case Kind::Quadratic:
      return Vec2(q11_ * y[0] + q12_ * y[1] + 0.5 * q111_ * y[0] * y[0],
                  q12_ * y[0] + q22_ * y[1] + 0.5 * q222_ * y[1] * y[1]);
  }
  return Vec2::Zero();
}

Eigen::Matrix2d GraphChart::hessian(const Vec2& y) const {
  Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
  switch (kind_) {
    case Kind::Flat: break;
    case Kind::SphereCap: {
      const double S = cap_root(R_, y);
      H = -Eigen::Matrix2d::Identity() / S - y * y.transpose() / (S * S * S);
      break;
    }
    case Kind::Quadratic:
      H << q11_ + q111_ * y[0], q12_, q12_, q22_ + q222_ * y[1];
      break;
  }
  return H;
}

double GraphChart::weight(const Vec2& y) const { return std::sqrt(1.0 + grad(y).squaredNorm()); }

Vec3 GraphChart::normal(const Vec2& y) const {
  const Vec2 g = grad(y);
  return Vec3(-g[0], -g[1], 1.0) / std::sqrt(1.0 + g.squaredNorm());
}

Vec3 GraphChart::dnormal(const Vec2& y, int k) const {
  const Vec2 g = grad(y);
  const Eigen::Matrix2d H = hessian(y);
  const Vec3 n(-g[0], -g[1], 1.0);
  const Vec3 dn(-H(0, k), -H(1, k), 0.0);
  const double w = n.norm();
  return dn / w - n * (n.dot(dn)) / (w * w * w);
}

std::array<SpinorMatrix, 3> GraphChart::cmat(const Vec2& y) const {
  const Vec3 d0 = dnormal(y, 0), d1 = dnormal(y, 1);
  std::array<SpinorMatrix, 3> c;
  for (int j = 0; j < 3; ++j) c[j] = alpha(1) * d0[j] + alpha(2) * d1[j];
  return c;
}

std::string GraphChart::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Flat: os << "flat"; break;
    case Kind::SphereCap: os << "sphere_cap(R=" << R_ << ")"; break;
    case Kind::Quadratic:
      os << "quadratic(" << q11_ << "," << q12_ << "," << q22_ << "," << q111_ << "," << q222_ << ")";
      break;
  }
  return os.str();
}

void SymbolState::validate() const {
  if (!chart) throw std::invalid_argument("SymbolState: no chart");
  if (!(h > 0)) throw std::invalid_argument("SymbolState: h must be positive");
  if (tau < eps) throw std::invalid_argument("SymbolState: tau < eps");
  if (y.norm() >= chart->domain_radius()) throw std::invalid_argument("SymbolState: y outside the chart");
}

double japanese(const Vec2& xi) { return std::sqrt(1.0 + xi.squaredNorm()); }

// ---------------------------------------------------------------- symbols

namespace {

Vec3 pad(const Vec2& xi) { return Vec3(xi[0], xi[1], 0.0); }

struct Local {
  Vec3 nu;
  double w;
  SpinorMatrix an;  // alpha . nu~
  std::array<SpinorMatrix, 3> c;
};

Local local(const SymbolState& s) {
  Local L;
  L.nu = s.chart->normal(s.y);
  L.w = s.chart->weight(s.y);
  L.an = alpha_dot(L.nu / L.w);
  L.c = s.chart->cmat(s.y);
  return L;
}

SpinorMatrix alpha_xi(const Vec2& xi) { return alpha(1) * xi[0] + alpha(2) * xi[1]; }

}  // namespace

SpinorMatrix L0(const SymbolState& s) {
  const Local L = local(s);
  return I1 * L.an * (alpha_xi(s.xi) + beta());
}

SpinorMatrix L1(const SymbolState& s) {
  const Local L = local(s);
  return I1 * L.an * (L.c[0] * s.xi[0] + L.c[1] * s.xi[1] - s.z * identity4());
}

SpinorMatrix L1_tilde(const SymbolState& s) {
  const Local L = local(s);
  return L1(s) + (L.an * L.c[2]) * L0(s);
}

SpinorMatrix dxi_L0(const SymbolState& s, int k) {
  const Local L = local(s);
  return I1 * L.an * alpha(k + 1);
}

SpinorMatrix dxi_L1_tilde(const SymbolState& s, int k) {
  const Local L = local(s);
  return I1 * L.an * L.c[k] + (L.an * L.c[2]) * (I1 * L.an * alpha(k + 1));
}

SpectralData spectral_data(const SymbolState& s) {
  const Vec3 nu = s.chart->normal(s.y);
  const double w = s.chart->weight(s.y);
  const Vec3 xi = pad(s.xi);
  const Vec3 nx = cross(nu, xi);
  SpectralData d;
  d.lambda = std::sqrt(nx.squaredNorm() + 1.0);
  d.rho_plus = (I1 * nu.dot(xi) + d.lambda) / w;
  d.rho_minus = (I1 * nu.dot(xi) - d.lambda) / w;
  const SpinorMatrix K = spin_dot(nx) - I1 * beta() * alpha_dot(nu);
  d.Pi_plus = 0.5 * (identity4() + K / d.lambda);
  d.Pi_minus = 0.5 * (identity4() - K / d.lambda);
  d.k_plus = 0.5 * (1.0 + 1.0 / d.lambda);
  d.k_minus = 0.5 * (1.0 - 1.0 / d.lambda);
  d.Theta = spin_dot(nx) / (2.0 * d.lambda);
  d.P_plus = proj_pm_unchecked(nu, +1);
  d.P_minus = proj_pm_unchecked(nu, -1);
  return d;
}

SpinorMatrix exp_L0(const SymbolState& s, double tau) {
  const SpectralData d = spectral_data(s);
  const double t = (tau - s.eps) / s.h;
  return std::exp(t * d.rho_minus) * d.Pi_minus + std::exp(t * d.rho_plus) * d.Pi_plus;
}

namespace {
constexpr double kSingularK = 1e-13;

void require_regular(const SpectralData& d) {
  if (d.k_minus < kSingularK) throw SingularSymbol("k_- vanishes: nu ^ xi = 0");
}
}  // namespace

SpinorMatrix B00(const SymbolState& s) {
  const SpectralData d = spectral_data(s);
  require_regular(d);
  return d.Pi_minus * d.P_plus / d.k_minus;
}

SpinorMatrix A0(const SymbolState& s) {
  const SpectralData d = spectral_data(s);
  return std::exp(s.offset() / s.h * d.rho_minus) * B00(s);
}

SpinorMatrix dy(const std::function<SpinorMatrix(const SymbolState&)>& F, const SymbolState& s, int k,
                double step) {
  auto D = [&](double t) {
    Vec2 e = Vec2::Zero();
    e[k] = t;
    return SpinorMatrix((F(s.with_y(s.y + e)) - F(s.with_y(s.y - e))) / (2.0 * t));
  };
  return (4.0 * D(0.5 * step) - D(step)) / 3.0;
}

cplx dy_scalar(const std::function<cplx(const SymbolState&)>& F, const SymbolState& s, int k, double step) {
  auto D = [&](double t) {
    Vec2 e = Vec2::Zero();
    e[k] = t;
    return (F(s.with_y(s.y + e)) - F(s.with_y(s.y - e))) / (2.0 * t);
  };
  return (4.0 * D(0.5 * step) - D(step)) / 3.0;
}

CoefficientMatrices coefficient_matrices(const SymbolState& s) {
  const Local L = local(s);
  const SpinorMatrix c3an = L.c[2] * L.an;
  CoefficientMatrices m;
  m.a0 = I1 * L.an;
  m.a_mult = -s.z * identity4() + c3an * beta();
  for (int k = 0; k < 2; ++k) {
    m.b[k] = L.c[k] + c3an * alpha(k + 1);
    m.e[k] = c3an * m.b[k];
    m.f[k] = m.b[k];
  }
  m.d_mult = c3an * c3an * beta() - s.z * c3an;
  return m;
}

// ---------------------------------------------------------------- closed forms

namespace {

struct CoefficientContext {
  SpectralData sd;
  CoefficientMatrices m;
  cplx delta;            // rho_- - rho_+
  SpinorMatrix alpha_dr; // alpha . d_y rho_-
  SpinorMatrix f_dr;     // f . d_y rho_-
  SpinorMatrix bxi, exi;
  SpinorMatrix Q;        // Pi_- a0 (P_+ - P_+ Theta/k_-) + Pi_+ a0
  double jx;             // <xi>
};

CoefficientContext context(const SymbolState& s) {
  CoefficientContext c;
  c.sd = spectral_data(s);
  require_regular(c.sd);
  c.m = coefficient_matrices(s);
  c.delta = c.sd.rho_minus - c.sd.rho_plus;
  auto rho = [](const SymbolState& t) { return spectral_data(t).rho_minus; };
  const cplx dr0 = dy_scalar(rho, s, 0), dr1 = dy_scalar(rho, s, 1);
  c.alpha_dr = alpha(1) * dr0 + alpha(2) * dr1;
  c.f_dr = c.m.f[0] * dr0 + c.m.f[1] * dr1;
  c.bxi = c.m.b[0] * s.xi[0] + c.m.b[1] * s.xi[1];
  c.exi = c.m.e[0] * s.xi[0] + c.m.e[1] * s.xi[1];
  c.Q = c.sd.Pi_minus * c.m.a0 * (c.sd.P_plus - c.sd.P_plus * c.sd.Theta / c.sd.k_minus) +
        c.sd.Pi_plus * c.m.a0;
  c.jx = japanese(s.xi);
  return c;
}

// a F = a_mult F - i alpha.d_y F ;  d F = d_mult F - i f.d_y F
SpinorMatrix apply_a(const CoefficientContext& c, const SymbolField& F, const SymbolState& s) {
  return c.m.a_mult * F(s) - I1 * (alpha(1) * dy(F, s, 0) + alpha(2) * dy(F, s, 1));
}

SpinorMatrix apply_d(const CoefficientContext& c, const SymbolField& F, const SymbolState& s) {
  return c.m.d_mult * F(s) - I1 * (c.m.f[0] * dy(F, s, 0) + c.m.f[1] * dy(F, s, 1));
}

SpinorMatrix B1_impl(const CoefficientContext& c, const SymbolState& s, int k) {
  const SpinorMatrix b00 = c.sd.Pi_minus * c.sd.P_plus / c.sd.k_minus;
  const cplx dl = c.delta;
  switch (k) {
    case 0: {
      const SpinorMatrix G = apply_a(c, B00, s) + c.bxi * b00;
      return s.h * c.Q * (G / dl + I1 * c.alpha_dr * b00 / (dl * dl));
    }
    case 1: {
      const SpinorMatrix G = apply_a(c, B00, s) + c.bxi * b00;
      return s.h * (c.sd.Pi_minus * c.m.a0 * G / dl - c.sd.Pi_plus * c.m.a0 * (I1 * c.alpha_dr) * b00 / (dl * dl));
    }
    case 2:
      return -s.h * c.sd.Pi_minus * c.m.a0 * (I1 * c.alpha_dr / (2.0 * dl * dl)) * b00;
    default:
      throw std::out_of_range("B1: k must be in 0..2");
  }
}

}  // namespace

SpinorMatrix B1(const SymbolState& s, int k) { return B1_impl(context(s), s, k); }

SpinorMatrix B2(const SymbolState& s, int k) {
  if (k < 0 || k > 4) throw std::out_of_range("B2: k must be in 0..4");
  const CoefficientContext c = context(s);
  const cplx dl = c.delta, dl2 = dl * dl, dl3 = dl2 * dl, dl4 = dl2 * dl2;
  const double X = c.jx;
  const SpinorMatrix& Pm = c.sd.Pi_minus;
  const SpinorMatrix& Pp = c.sd.Pi_plus;
  const SpinorMatrix& a0 = c.m.a0;
  const SpinorMatrix& adr = c.alpha_dr;

  auto b1 = [](int kk) { return SymbolField([kk](const SymbolState& t) { return B1(t, kk); }); };
  const SpinorMatrix b00 = Pm * c.sd.P_plus / c.sd.k_minus;
  const SpinorMatrix B10 = B1_impl(c, s, 0), B11 = B1_impl(c, s, 1), B12 = B1_impl(c, s, 2);
  auto aB = [&](int kk) { return apply_a(c, b1(kk), s); };

  switch (k) {
    case 0: {
      const SpinorMatrix dB00 = apply_d(c, B00, s);
      const SpinorMatrix aB10 = aB(0), aB11 = aB(1);
      const SpinorMatrix inner = (aB10 + c.bxi * B10 + dB00 + c.exi * b00) / dl -
                                 (adr * B10 + X * aB11 + X * c.bxi * B11 + c.f_dr * b00) / dl2 +
                                 (2.0 * X * adr * B11 + 2.0 * X * c.bxi * B10 + 2.0 * X * X * c.bxi * B12) / dl3 -
                                 6.0 * X * X * adr * B12 / dl4;
      return s.h * c.Q * inner;
    }
    case 1: {
      // bare b and e read as b.xi and e.xi over the sibling denominator
      const SpinorMatrix dB00 = apply_d(c, B00, s);
      const SpinorMatrix aB10 = aB(0), aB11 = aB(1), aB12 = aB(2);
      const SpinorMatrix minus = (aB10 + dB00) / dl + c.bxi * B10 / dl + c.exi * b00 / dl;
      const SpinorMatrix plus = (c.f_dr * b00 + aB11 + X * B11) / dl + adr * B10 / (dl * X) -
                                (2.0 * adr * B11 + 2.0 * X * aB12 + 2.0 * X * X * B12) / dl2 +
                                6.0 * X * adr * B12 / dl3;
      return s.h * Pm * a0 * minus + s.h * Pp * a0 * plus;
    }
    case 2: {
      const SpinorMatrix aB11 = aB(1), aB12 = aB(2);
      const SpinorMatrix minus = aB11 / (2.0 * dl) + c.bxi * B11 / (2.0 * dl) + adr * B10 / (2.0 * dl2) +
                                 c.f_dr * b00 / (2.0 * dl2);
      const SpinorMatrix plus = adr * B11 / (dl * X) - aB12 / dl + c.bxi * B12 / dl - 3.0 * adr * B12 / dl2;
      return s.h * Pm * a0 * minus + s.h * Pp * a0 * plus;
    }
    case 3: {
      const SpinorMatrix aB12 = aB(2);
      const SpinorMatrix minus = aB12 / (3.0 * X) + c.bxi * B12 / (3.0 * X) + adr * B11 / (3.0 * dl2);
      const SpinorMatrix plus = adr * B12 / (dl * X);
      return s.h * Pm * a0 * minus + s.h * Pp * a0 * plus;
    }
    default:
      return s.h * Pm * a0 * (adr * B12 / (4.0 * dl2));
  }
}

SpinorMatrix A1(const SymbolState& s) {
  const CoefficientContext c = context(s);
  const cplx t = s.offset() / s.h * c.delta;
  SpinorMatrix sum = SpinorMatrix::Zero();
  cplx p = 1.0;
  for (int k = 0; k <= 2; ++k, p *= t) sum += p * B1_impl(c, s, k);
  return std::exp(s.offset() / s.h * c.sd.rho_minus) * sum;
}

SpinorMatrix A2(const SymbolState& s) {
  const SpectralData d = spectral_data(s);
  const double t = s.offset() / s.h * japanese(s.xi);
  SpinorMatrix sum = SpinorMatrix::Zero();
  double p = 1.0;
  for (int k = 0; k <= 4; ++k, p *= t) sum += p * B2(s, k);
  return std::exp(s.offset() / s.h * d.rho_minus) * sum;
}

// ---------------------------------------------------------------- transport recursion

SpinorMatrix ExpPoly::eval(double s) const {
  SpinorMatrix sum = SpinorMatrix::Zero();
  for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k) sum = sum * s + coeff[k];
  return std::exp(s / h * rate) * sum;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  if (o.coeff.size() > coeff.size()) coeff.resize(o.coeff.size(), SpinorMatrix::Zero());
  for (size_t k = 0; k < o.coeff.size(); ++k) coeff[k] += o.coeff[k];
  return *this;
}

ExpPoly solve_transport(const SymbolState& s, const ExpPoly& forcing, const SpinorMatrix& boundary) {
  const SpectralData d = spectral_data(s);
  require_regular(d);
  const cplx delta = d.rho_minus - d.rho_plus;
  const int K = static_cast<int>(forcing.coeff.size());
  // Pi_+ part: polynomial particular solution (the homogeneous one grows).
  std::vector<SpinorMatrix> Q(K + 1, SpinorMatrix::Zero());
  for (int k = K - 1; k >= 0; --k)
    Q[k] = (d.Pi_plus * forcing.coeff[k] - s.h * (k + 1.0) * Q[k + 1]) / delta;
  // C(0) with P_+ C(0) = boundary and Pi_+ C(0) = Q_0.
  const SpinorMatrix X =
      boundary + d.P_minus * (Q[0] - d.Pi_plus * boundary) / d.k_minus;
  ExpPoly out;
  out.rate = d.rho_minus;
  out.h = s.h;
  out.coeff.assign(K + 1, SpinorMatrix::Zero());
  out.coeff[0] = X;
  for (int k = 1; k <= K; ++k) out.coeff[k] = Q[k] + d.Pi_minus * forcing.coeff[k - 1] / (s.h * k);
  return out;
}

namespace {

// d/dy_k of e^{h^-1 s rho(y)} sum s^j G_j(y), as an ExpPoly at y.
ExpPoly dy_exppoly(const ExpPolyField& G, const SymbolState& s, int k, double step = 1e-3) {
  auto diff = [&](double t) {
    Vec2 e = Vec2::Zero();
    e[k] = t;
    ExpPoly p = G(s.with_y(s.y + e)), m = G(s.with_y(s.y - e));
    std::vector<SpinorMatrix> dc(p.coeff.size());
    for (size_t j = 0; j < dc.size(); ++j) dc[j] = (p.coeff[j] - m.coeff[j]) / (2.0 * t);
    return std::make_pair(dc, (p.rate - m.rate) / (2.0 * t));
  };
  auto [d1, r1] = diff(step);
  auto [d2, r2] = diff(0.5 * step);
  const cplx drate = (4.0 * r2 - r1) / 3.0;
  const ExpPoly g = G(s);
  ExpPoly out;
  out.rate = g.rate;
  out.h = g.h;
  out.coeff.assign(g.coeff.size() + 1, SpinorMatrix::Zero());
  for (size_t j = 0; j < g.coeff.size(); ++j) {
    out.coeff[j] += (4.0 * d2[j] - d1[j]) / 3.0;
    out.coeff[j + 1] += drate / g.h * g.coeff[j];
  }
  return out;
}

ExpPoly combine(const SpinorMatrix& M, const ExpPolyField& G, const SymbolState& s,
                const std::array<SpinorMatrix, 2>& D) {
  const ExpPoly g = G(s);
  ExpPoly out;
  out.rate = g.rate;
  out.h = g.h;
  for (const auto& c : g.coeff) out.coeff.push_back(M * c);
  for (int k = 0; k < 2; ++k) {
    ExpPoly dk = dy_exppoly(G, s, k);
    for (auto& c : dk.coeff) c = SpinorMatrix(-I1 * D[k] * c);
    out += dk;
  }
  return out;
}

}  // namespace

ExpPoly first_order_source(const ExpPolyField& G, const SymbolState& s) {
  return combine(L1_tilde(s), G, s, {dxi_L0(s, 0), dxi_L0(s, 1)});
}

ExpPoly second_order_source(const ExpPolyField& G, const SymbolState& s) {
  const Local L = local(s);
  return combine((L.an * L.c[2]) * L1_tilde(s), G, s, {dxi_L1_tilde(s, 0), dxi_L1_tilde(s, 1)});
}

ExpPoly transport_A(const SymbolState& s, int j) {
  const SpectralData d = spectral_data(s);
  ExpPoly forcing;
  forcing.rate = d.rho_minus;
  forcing.h = s.h;
  forcing.coeff = {SpinorMatrix::Zero()};
  if (j == 0) return solve_transport(s, forcing, d.P_plus);
  if (j < 0 || j > 2) throw std::out_of_range("transport_A: j must be in 0..2");
  auto prev = [j](int back) { return ExpPolyField([j, back](const SymbolState& t) { return transport_A(t, j - back); }); };
  forcing = first_order_source(prev(1), s);
  if (j == 2) forcing += second_order_source(prev(2), s);
  return solve_transport(s, forcing, SpinorMatrix::Zero());
}

// ---------------------------------------------------------------- residuals

ResidualResult transport_residual(int j, const SymbolField& Aj, const SymbolField& prev1, const SymbolField& prev2,
                                  const SymbolState& s, double step, double source_scale) {
  auto cdiff = [&](const SymbolField& F, auto shift, double scale = 1.0) {
    return SpinorMatrix((F(shift(step)) - F(shift(-step))) / (2.0 * step * scale));
  };
  auto in_tau = [&](double t) { return s.with_tau(s.tau + s.h * t); };
  auto in_y = [&](int k) {
    return [&s, k](double t) { Vec2 e = Vec2::Zero(); e[k] = t; return s.with_y(s.y + e); };
  };
  auto in_xi = [&](int k) {
    return [&s, k](double t) { Vec2 e = Vec2::Zero(); e[k] = t; return s.with_xi(s.xi + e); };
  };

  const SpinorMatrix A = Aj(s);
  const SpinorMatrix dtau = s.h * cdiff(Aj, in_tau, s.h);
  const SpinorMatrix LA = L0(s) * A;
  SpinorMatrix src = SpinorMatrix::Zero();
  if (j >= 1) {
    src += L1_tilde(s) * prev1(s);
    for (int k = 0; k < 2; ++k)
      src -= I1 * cdiff(SymbolField(L0), in_xi(k)) * cdiff(prev1, in_y(k));
  }
  if (j >= 2) {
    const Local L = local(s);
    src += (L.an * L.c[2]) * L1_tilde(s) * prev2(s);
    for (int k = 0; k < 2; ++k)
      src -= I1 * cdiff(SymbolField(L1_tilde), in_xi(k)) * cdiff(prev2, in_y(k));
  }
  src *= source_scale;
  ResidualResult r;
  r.residual = (dtau - LA - src).norm();
  r.scale = std::max({dtau.norm(), LA.norm(), src.norm()});
  return r;
}

// ---------------------------------------------------------------- order report

bool OrderEstimate::within(double tol) const {
  return std::abs(xi_order - expected_xi) <= tol && std::abs(h_order - expected_h) <= tol;
}

std::vector<OrderEstimate> symbol_order_report(const SymbolState& base, const Vec2& direction,
                                               const OrderSweep& sweep) {
  struct Entry {
    int j, k;
    double cx, ch;
  };
  const Entry entries[] = {{1, 0, 0, 1}, {1, 1, 0, 1}, {1, 2, -1, 1}, {2, 0, 0, 1},
                           {2, 1, 0, 1}, {2, 2, 0, 1}, {2, 3, -1, 2}, {2, 4, -2, 2}};
  const Vec2 dir = direction.normalized();
  std::vector<OrderEstimate> out;
  for (const Entry& e : entries) {
    auto coef = [&](const SymbolState& s) { return e.j == 1 ? B1(s, e.k) : B2(s, e.k); };
    std::vector<std::pair<double, double>> px, ph;
    for (double t : sweep.xi_magnitudes) {
      const SymbolState s = base.with_xi(t * dir).with_h(sweep.h_for_xi);
      px.emplace_back(japanese(s.xi), coef(s).norm());
    }
    for (double h : sweep.h_values) {
      const SymbolState s = base.with_xi(sweep.xi_for_h * dir).with_h(h);
      ph.emplace_back(h, coef(s).norm());
    }
    const RateFit fx = fit_rate(px), fh = fit_rate(ph);
    OrderEstimate o;
    o.name = "B" + std::to_string(e.j) + std::to_string(e.k);
    o.j = e.j;
    o.k = e.k;
    o.xi_order = fx.slope;
    o.xi_r2 = fx.r2;
    o.h_order = fh.slope;
    o.h_r2 = fh.r2;
    o.expected_xi = e.cx;
    o.expected_h = e.ch;
    out.push_back(o);
  }
  return out;
}

}  // namespace dshell
