#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "diracshell/parametrix.hpp"

using namespace dshell;

namespace {
SymbolState state(const GraphChart& ch, Vec2 y, Vec2 xi, double h, double offset) {
  SymbolState s;
  s.chart = &ch;
  s.y = y;
  s.xi = xi;
  s.h = h;
  s.eps = 0.1;
  s.tau = s.eps + offset;
  s.z = cplx(0.3, 0.5);
  return s;
}
}  // namespace

TEST_CASE("flat chart spectral data") {
  const auto ch = GraphChart::flat();
  const auto s = state(ch, Vec2::Zero(), Vec2(3, 4), 1.0, 0.0);
  const auto d = spectral_data(s);
  CHECK(d.lambda == doctest::Approx(std::sqrt(26.0)));
  CHECK(std::abs(d.rho_plus - std::sqrt(26.0)) < 1e-14);
  CHECK(std::abs(d.rho_minus + std::sqrt(26.0)) < 1e-14);
  for (const auto& c : ch.cmat(Vec2(0.3, 0.1))) CHECK(c.norm() == 0.0);
  CHECK((L1_tilde(s) - L1(s)).norm() == 0.0);
}

TEST_CASE("L0 at zero covariable on the flat chart") {
  const auto ch = GraphChart::flat();
  const auto s = state(ch, Vec2::Zero(), Vec2::Zero(), 1.0, 0.0);
  const SpinorMatrix L = L0(s);
  CHECK((L - I1 * alpha(3) * beta()).norm() < 1e-15);
  CHECK((L * L - identity4()).norm() < 1e-15);
}

TEST_CASE("L0 does not depend on z and L1 is affine in z") {
  const auto ch = GraphChart::quadratic(0.7, 0.2, -0.4, 0.3, -0.2);
  auto s = state(ch, Vec2(0.2, -0.1), Vec2(1.5, -0.7), 0.5, 0.1);
  auto t = s;
  t.z = cplx(-1.0, 2.0);
  auto mid = s;
  mid.z = 0.5 * (s.z + t.z);
  CHECK((L0(s) - L0(t)).norm() == 0.0);
  CHECK((L1(s) + L1(t) - 2.0 * L1(mid)).norm() < 1e-14);
}

TEST_CASE("chart normal and c-matrices") {
  for (const auto& ch : {GraphChart::quadratic(0.7, 0.2, -0.4, 0.3, -0.2), GraphChart::sphere_cap(1.3)}) {
    const Vec2 y(0.25, -0.15);
    CHECK(ch.normal(y).norm() == doctest::Approx(1.0).epsilon(1e-15));
    const double h = 1e-5;
    const auto c = ch.cmat(y);
    for (int j = 0; j < 3; ++j) {
      SpinorMatrix fd = SpinorMatrix::Zero();
      for (int k = 0; k < 2; ++k) {
        const Vec2 e = h * Vec2::Unit(k);
        fd += alpha(k + 1) * ((ch.normal(y + e)[j] - ch.normal(y - e)[j]) / (2 * h));
      }
      CHECK((fd - c[j]).norm() < 1e-8);
    }
  }
}

TEST_CASE("degenerate covariable is rejected") {
  const auto ch = GraphChart::flat();
  CHECK_THROWS_AS(B00(state(ch, Vec2::Zero(), Vec2::Zero(), 1.0, 0.0)), SingularSymbol);
  CHECK_THROWS_AS(A0(state(ch, Vec2::Zero(), Vec2(1e-15, 0), 1.0, 0.2)), SingularSymbol);
  const auto cap = GraphChart::sphere_cap(1.0);
  CHECK_THROWS_AS(state(cap, Vec2(1.2, 0), Vec2(1, 1), 1.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(state(cap, Vec2(0.1, 0), Vec2(1, 1), 1.0, -0.05).validate(), std::invalid_argument);
}

TEST_CASE("exponential of L0") {
  const auto ch = GraphChart::sphere_cap(1.0);
  const auto s = state(ch, Vec2(0.2, 0.1), Vec2(2.0, -1.0), 0.4, 0.0);
  CHECK((exp_L0(s, s.eps) - identity4()).norm() < 1e-14);
  const SpinorMatrix a = exp_L0(s, s.eps + 0.03), b = exp_L0(s, s.eps + 0.05), ab = exp_L0(s, s.eps + 0.08);
  CHECK((a * b - ab).norm() < 1e-13 * ab.norm());
}

TEST_CASE("A0 boundary value and decay") {
  const auto ch = GraphChart::quadratic(0.7, 0.2, -0.4, 0.3, -0.2);
  const auto s0 = state(ch, Vec2(0.1, 0.2), Vec2(-2.0, 1.0), 0.3, 0.0);
  const auto d = spectral_data(s0);
  CHECK((d.P_plus * A0(s0) - d.P_plus).norm() < 1e-14);
  CHECK(d.rho_minus.real() < -0.5 * japanese(s0.xi));
  for (double off : {0.1, 0.2, 0.4}) {
    const auto s = s0.with_tau(s0.eps + off);
    CHECK(A0(s).norm() == doctest::Approx(std::exp(off / s.h * d.rho_minus.real()) * B00(s0).norm()).epsilon(1e-12));
  }
}

TEST_CASE("closed-form A1 is h times the bounded transport solution") {
  const auto ch = GraphChart::quadratic(0.7, 0.2, -0.4, 0.3, -0.2);
  const auto s = state(ch, Vec2(0.15, -0.2), Vec2(1.2, 2.1), 0.35, 0.1);
  const SpinorMatrix exact = transport_A(s, 1).eval(s.offset());
  CHECK((A1(s) - s.h * exact).norm() < 1e-10 * A1(s).norm());
  const auto s0 = s.with_tau(s.eps);
  CHECK((spectral_data(s0).P_plus * A1(s0)).norm() < 1e-13);
}

TEST_CASE("transport residuals are second order") {
  const auto ch = GraphChart::sphere_cap(1.0);
  const auto s = state(ch, Vec2(0.1, 0.05), Vec2(1.0, -2.0), 0.5, 0.3);
  const SymbolField a0 = A0, a1 = A1;
  const double c = transport_residual(1, a1, a0, a0, s, 1e-2, s.h).relative();
  const double f = transport_residual(1, a1, a0, a0, s, 5e-3, s.h).relative();
  CHECK(c / f == doctest::Approx(4.0).epsilon(0.05));
  CHECK(transport_residual(0, a0, a0, a0, s, 1e-2).relative() < 1e-3);
}

TEST_CASE("symbol orders of the coefficients") {
  const auto ch = GraphChart::sphere_cap(1.0);
  SymbolState base = state(ch, Vec2(0.2, -0.1), Vec2::Zero(), 1.0, 0.0);
  for (const auto& o : symbol_order_report(base, Vec2(0.6, 0.8))) {
    INFO(o.name);
    CHECK(o.within(0.2));
  }
}
