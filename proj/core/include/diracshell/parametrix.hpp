// Semiclassical symbols of the boundary problem in a graph chart: L0, L1,
// their spectral data, the parametrix terms A0, A1, A2 and residual/order
// checks.
//
// Notation: y in R^2 is the chart variable, xi in R^2 its covariable (padded
// with xi_3 = 0 where a 3-vector is needed), s = tau - eps the normal offset.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diracshell/clifford.hpp"

namespace dshell {

using Vec2 = Eigen::Vector2d;

struct SingularSymbol : std::domain_error {
  using std::domain_error::domain_error;
};

// Graph chart x = (y, chi(y)) with analytic chi. Supported kinds:
//   flat:       chi = 0
//   sphere_cap: chi = sqrt(R^2 - |y|^2) - R  (upper cap of a sphere of radius R)
//   quadratic:  chi = q11 y1^2/2 + q12 y1 y2 + q22 y2^2/2 + q111 y1^3/6 + q222 y2^3/6
class GraphChart {
 public:
  static GraphChart flat();
  static GraphChart sphere_cap(double radius);
  static GraphChart quadratic(double q11, double q12, double q22, double q111 = 0.0, double q222 = 0.0);

  double chi(const Vec2& y) const;
  Vec2 grad(const Vec2& y) const;
  Eigen::Matrix2d hessian(const Vec2& y) const;
  // sqrt(1 + |grad chi|^2)
  double weight(const Vec2& y) const;
  // nu^phi = (-d1 chi, -d2 chi, 1)/weight
  Vec3 normal(const Vec2& y) const;
  // d nu / d y_k, k = 0,1 (analytic)
  Vec3 dnormal(const Vec2& y, int k) const;
  // c_j = (alpha_1 d_1 + alpha_2 d_2) nu_j, j = 1..3 stored at [j-1]
  std::array<SpinorMatrix, 3> cmat(const Vec2& y) const;
  // Largest |y| for which the chart is defined (inf for polynomial kinds).
  double domain_radius() const;
  std::string describe() const;

 private:
  enum class Kind { Flat, SphereCap, Quadratic };
  Kind kind_ = Kind::Flat;
  double R_ = 1.0;
  double q11_ = 0, q12_ = 0, q22_ = 0, q111_ = 0, q222_ = 0;
};

struct SymbolState {
  const GraphChart* chart = nullptr;
  Vec2 y = Vec2::Zero();
  Vec2 xi = Vec2::Zero();
  double tau = 0.0;
  double h = 1.0;
  double eps = 0.0;
  cplx z{0.0, 0.0};

  double offset() const { return tau - eps; }
  void validate() const;  // throws std::invalid_argument
  SymbolState with_y(const Vec2& v) const { SymbolState s = *this; s.y = v; return s; }
  SymbolState with_xi(const Vec2& v) const { SymbolState s = *this; s.xi = v; return s; }
  SymbolState with_tau(double t) const { SymbolState s = *this; s.tau = t; return s; }
  SymbolState with_h(double v) const { SymbolState s = *this; s.h = v; return s; }
};

double japanese(const Vec2& xi);  // <xi> = sqrt(1 + |xi|^2)

SpinorMatrix L0(const SymbolState& s);
SpinorMatrix L1(const SymbolState& s);
SpinorMatrix L1_tilde(const SymbolState& s);
// d/dxi_k of L0 and of L1_tilde (both affine in xi, computed exactly).
SpinorMatrix dxi_L0(const SymbolState& s, int k);
SpinorMatrix dxi_L1_tilde(const SymbolState& s, int k);

struct SpectralData {
  cplx rho_plus, rho_minus;
  SpinorMatrix Pi_plus, Pi_minus;
  double lambda, k_plus, k_minus;
  SpinorMatrix Theta;
  SpinorMatrix P_plus, P_minus;  // MIT projections for nu^phi
};
SpectralData spectral_data(const SymbolState& s);

// e^{h^-1 (tau - eps) L0} through the spectral decomposition.
SpinorMatrix exp_L0(const SymbolState& s, double tau);
inline SpinorMatrix exp_L0(const SymbolState& s) { return exp_L0(s, s.tau); }

// Pi_- P_+ / k_-, the value of A0 on tau = eps. Throws SingularSymbol when
// k_- vanishes (nu ^ xi = 0, which includes xi = 0).
SpinorMatrix B00(const SymbolState& s);
SpinorMatrix A0(const SymbolState& s);

// Coefficient matrices of the transport system. a and d also carry a derivative part
// (-i alpha.d_y and -i f.d_y) handled by the closed forms themselves.
struct CoefficientMatrices {
  SpinorMatrix a0;                 // i alpha.nu~
  SpinorMatrix a_mult;             // -z + c3 alpha.nu~ beta
  std::array<SpinorMatrix, 2> b;   // c_k + c3 alpha.nu~ alpha_k
  SpinorMatrix d_mult;             // (c3 alpha.nu~)^2 beta - c3 alpha.nu~ z
  std::array<SpinorMatrix, 2> e;   // c3 alpha.nu~ b_k
  std::array<SpinorMatrix, 2> f;   // b_k
};
CoefficientMatrices coefficient_matrices(const SymbolState& s);

// Closed-form coefficients. B1(k), k = 0..2 in the variable
// h^-1 s (rho_- - rho_+); B2(k), k = 0..4 in the variable h^-1 s <xi>.
SpinorMatrix B1(const SymbolState& s, int k);
SpinorMatrix B2(const SymbolState& s, int k);
SpinorMatrix A1(const SymbolState& s);
SpinorMatrix A2(const SymbolState& s);

// Centered difference of a matrix field in y_k with one Richardson step.
SpinorMatrix dy(const std::function<SpinorMatrix(const SymbolState&)>& F, const SymbolState& s, int k,
                double step = 1e-3);
cplx dy_scalar(const std::function<cplx(const SymbolState&)>& F, const SymbolState& s, int k,
               double step = 1e-3);

// ---------------------------------------------------------------------------
// Exact solutions of  h d_s C = L0 C + F,  P_+ C(0) = g  for forcing of the
// form F = e^{h^-1 s rho_-} sum_k s^k F_k, selecting the solution bounded as
// s -> infinity. Used as an independent check of the closed forms and as the
// plug-in point for higher terms.

struct ExpPoly {
  cplx rate;                        // rho_- (the exponent is h^-1 s rate)
  std::vector<SpinorMatrix> coeff;  // polynomial coefficients in s
  double h = 1.0;

  SpinorMatrix eval(double s) const;
  ExpPoly& operator+=(const ExpPoly& o);
};

using ExpPolyField = std::function<ExpPoly(const SymbolState&)>;

// Bounded solution with P_+ C(0) = boundary (boundary = P_+ for A0, 0 for j >= 1).
ExpPoly solve_transport(const SymbolState& s, const ExpPoly& forcing, const SpinorMatrix& boundary);

// (L1~ - i d_xi L0 . d_y) G and ((alpha.nu~ c3) L1~ - i d_xi L1~ . d_y) G.
ExpPoly first_order_source(const ExpPolyField& G, const SymbolState& s);
ExpPoly second_order_source(const ExpPolyField& G, const SymbolState& s);

// A0, A1, A2 from the transport recursion.
ExpPoly transport_A(const SymbolState& s, int j);

// ---------------------------------------------------------------------------
// Residual of  h d_tau A_j - L0 A_j - scale * [sources]  with all derivatives
// (tau, y and xi) taken by plain centered differences of the given step, so a
// consistent A_j gives a residual O(step^2). The tau step is step * h, the
// natural scale of the normal variable.

using SymbolField = std::function<SpinorMatrix(const SymbolState&)>;

struct ResidualResult {
  double residual = 0.0;  // absolute Frobenius norm
  double scale = 0.0;     // norm of the largest term
  double relative() const { return scale > 0 ? residual / scale : residual; }
};

// j = 0: h d_tau A - L0 A.
// j = 1: ... - scale (L1~ - i d_xi L0.d_y) prev1.
// j = 2: ... - scale [(L1~ - i d_xi L0.d_y) prev1 + ((alpha.nu~ c3) L1~ - i d_xi L1~.d_y) prev2].
ResidualResult transport_residual(int j, const SymbolField& Aj, const SymbolField& prev1, const SymbolField& prev2,
                                  const SymbolState& s, double step, double source_scale = 1.0);

struct ResidualOrder {
  double coarse = 0.0, fine = 0.0;  // relative residual at step and step/2
  double ratio() const { return fine > 0 ? coarse / fine : INFINITY; }
};

// ---------------------------------------------------------------------------
// Order report: ||B_{j,k}|| ~ <xi>^p at h = 1 and ~ h^q as h -> 0.

struct OrderEstimate {
  std::string name;
  int j = 0, k = 0;
  double xi_order = 0.0, h_order = 0.0;
  double xi_r2 = 0.0, h_r2 = 0.0;
  double expected_xi = 0.0, expected_h = 0.0;
  bool within(double tol) const;
};

struct OrderSweep {
  std::vector<double> xi_magnitudes{100, 200, 400, 800, 1600};
  std::vector<double> h_values{1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2};
  double h_for_xi = 1.0;  // the sharp xi exponent is attained at the top of h in (0,1]
  double xi_for_h = 20.0;
};


std::vector<OrderEstimate> symbol_order_report(const SymbolState& base, const Vec2& direction,
                                               const OrderSweep& sweep = {});

}  // namespace dshell
