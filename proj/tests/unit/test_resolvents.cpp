#include <stdexcept>
#include "doctest.h"
#include "diracshell/resolvents.hpp"

using namespace dshell;

namespace {
Spinor amp() {
  Spinor a;
  a << 1.0, cplx(0, 0.5), -0.3, 0.2;
  return a;
}
EvaluationSet around(const Vec3& c, double r) {
  EvaluationSet t;
  for (const Vec3 d : {Vec3(1, 0, 0), Vec3(0, -1, 0), Vec3(0, 0.6, 0.8)}) {
    t.points.push_back(c + r * d);
    t.regions.push_back(Region::OmegaPlus);
  }
  return t;
}
}  // namespace

TEST_CASE("MIT resolvent reproduces a manufactured bump") {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const Vec3 c(0.1, -0.2, 0.3);
  auto bump = std::make_shared<ManufacturedBump>(c, 0.1, amp(), sp, Region::OmegaPlus);
  const auto T = around(c, 0.1);
  const auto r = mit_resolvent(Domain::OmegaPlus, make_sphere(1.0, 8), sp, {bump}, T);
  for (int i = 0; i < T.size(); ++i) CHECK((r.values[i] - bump->solution(T.points[i])).norm() < 1e-8 * bump->solution(T.points[i]).norm() + 1e-12);
  const auto z = mit_resolvent(Domain::OmegaPlus, make_sphere(1.0, 8), sp, {}, T);
  for (const auto& v : z.values) CHECK(v.norm() == 0.0);
}

TEST_CASE("Lorentz modes agree and do not transmit") {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const SurfaceSolver sol(make_sphere(1.0, 8), sp);
  std::vector<SourcePtr> f = {std::make_shared<GaussianSource>(
      std::vector<GaussianSource::Bump>{{Vec3(1.2, 0.8, -0.9), 0.08, amp()}}, Region::OmegaMinusEps)};
  EvaluationSet T;
  for (const Vec3 x : {Vec3(0.1, 0.2, 0.1), Vec3(1.5, 0.3, 0.0)}) {
    T.points.push_back(x);
    T.regions.push_back(classify(sol.surface().chart_id, 0, x));
  }
  const auto g = lorentz_resolvent(sol, f, T, LorentzMode::GlobalKrein);
  const auto d = lorentz_resolvent(sol, f, T, LorentzMode::MitDirectSum);
  CHECK((g.values[1] - d.values[1]).norm() < 1e-3 * d.values[1].norm());
  // discretization leak; ~1e-4 at N=8, 5e-9 at N=24
  CHECK(g.values[0].norm() < 1e-3 * g.values[1].norm());
}

TEST_CASE("perturbed resolvent splits into MIT part and correction") {
  const auto S = make_sphere(1.0, 12);
  const PerturbedPlan P(S, cplx(0, 0.5), 1.0, 10.0, 0.1);
  std::vector<SourcePtr> f = {std::make_shared<GaussianSource>(
      std::vector<GaussianSource::Bump>{{Vec3(0.1, -0.2, 0.3), 0.08, amp()}}, Region::OmegaPlus)};
  EvaluationSet T;
  for (const Vec3 x : {Vec3(0.2, 0.1, -0.3), Vec3(1.3, 0.4, 0.2)}) {
    T.points.push_back(x);
    T.regions.push_back(classify(S.chart_id, 0.1, x));
  }
  const auto r = P.solve(f, T);
  for (int i = 0; i < T.size(); ++i) CHECK((r.values[i] - r.mit_part[i] - r.correction[i]).norm() < 1e-14);
  // Krein formula against the independent transmission solver (gap 1e-3 at N=6, 4e-7 at N=12).
  const auto t = transmission_resolvent(S, cplx(0, 0.5), 1.0, 10.0, 0.1, f, T);
  for (int i = 0; i < T.size(); ++i) CHECK((r.values[i] - t.values[i]).norm() < 1e-5 * t.values[i].norm());
  const auto w = P.pair_weights();
  CHECK(P.xi().weighted_norm(w, w) < 3.0);
}

TEST_CASE("classification of points") {
  const auto S = make_sphere(1.0, 4);
  CHECK(classify(S.chart_id, 0.1, Vec3(0, 0, 0.5)) == Region::OmegaPlus);
  CHECK(classify(S.chart_id, 0.1, Vec3(0, 0, 1.05)) == Region::Shell);
  CHECK(classify(S.chart_id, 0.1, Vec3(0, 0, 1.5)) == Region::OmegaMinusEps);
}
