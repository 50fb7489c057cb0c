#include <stdexcept>
#include "doctest.h"
#include "diracshell/potential_ops.hpp"

using namespace dshell;

namespace {
Eigen::VectorXcd analytic_density(const SurfaceQuadrature& s) {
  Eigen::VectorXcd g(4 * s.size());
  for (int i = 0; i < s.size(); ++i) {
    const double r = (s.dirs[i] - Vec3(1.5, 0, 0)).norm();
    g.segment<4>(4 * i) << 1.0 / r, cplx(0, 0.3) / r, 0.5 / r, cplx(0.2, -0.4) / r;
  }
  return g;
}

double identity_error(int N) {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const auto s = make_sphere(1.0, N);
  const auto C = assemble_cauchy(s, sp);
  const auto T = (alpha_nu_op(s, C.layout) * C) * cplx(2.0);
  const auto g = analytic_density(s);
  return density_norm(s, T.apply(T.apply(g)) + g) / density_norm(s, g);
}
}  // namespace

TEST_CASE("modal and dense Cauchy assembly agree") {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const auto s = make_sphere(1.0, 6);
  AssemblyOptions dense;
  dense.use_modes = false;
  const auto Cm = assemble_cauchy(s, sp), Cd = assemble_cauchy(s, sp, dense);
  CHECK((Cm.to_dense() - Cd.blocks[0]).cwiseAbs().maxCoeff() < 1e-13 * Cd.blocks[0].cwiseAbs().maxCoeff());
}

TEST_CASE("jump relation holds exactly") {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const auto s = make_sphere(1.0, 6);
  const auto C = assemble_cauchy(s, sp);
  const auto D = trace_limits(C, s, Sign::Plus) - trace_limits(C, s, Sign::Minus) + alpha_nu_op(s, C.layout) * I1;
  CHECK(D.max_abs() < 1e-14);
}

TEST_CASE("Cauchy identity error decreases under refinement") {
  const double e6 = identity_error(6), e12 = identity_error(12);
  CHECK(e12 < e6 / 1.5);
  CHECK(e12 < 1e-2);
}

TEST_CASE("side table of the shell") {
  CHECK(shell_side_on_sigma() == Sign::Minus);
  CHECK(shell_side_on_sigma_eps() == Sign::Plus);
}

TEST_CASE("near-surface limits match the one-sided traces") {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const auto s = make_sphere(1.0, 12);
  const auto C = assemble_cauchy(s, sp);
  const auto g = analytic_density(s);
  const int i = s.size() / 2 + 3;
  for (Sign side : {Sign::Plus, Sign::Minus}) {
    const Eigen::VectorXcd ref = trace_limits(C, s, side).apply(g);
    // points on the given side: "+" is Omega_+, inside the sphere
    const double sgn = side == Sign::Plus ? -1.0 : 1.0;
    std::vector<Vec3> pts;
    for (double d : {4e-3, 2e-3, 1e-3}) pts.push_back(s.nodes[i] + sgn * d * s.nu(i));
    const auto v = layer_apply(s, pts, sp, g);
    // quadratic extrapolation to d = 0 from d, d/2, d/4
    const Spinor lim = (v[0] - 6.0 * v[1] + 8.0 * v[2]) / 3.0;
    CHECK((lim - ref.segment<4>(4 * i)).norm() / ref.segment<4>(4 * i).norm() < 2e-2);
  }
}
