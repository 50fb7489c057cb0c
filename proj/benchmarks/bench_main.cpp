#include <benchmark/benchmark.h>

#include "diracshell/kernel.hpp"
#include "diracshell/parametrix.hpp"
#include "diracshell/potential_ops.hpp"

using namespace dshell;

static void BM_Kernel(benchmark::State& st) {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  Vec3 x(0.3, -0.2, 0.5);
  for (auto _ : st) {
    benchmark::DoNotOptimize(phi(sp, x));
    x[0] += 1e-9;
  }
}
BENCHMARK(BM_Kernel);

static void BM_Cauchy(benchmark::State& st) {
  const SpectralPoint sp(cplx(0, 0.5), 1.0);
  const auto s = make_sphere(1.0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(assemble_cauchy(s, sp));
}
BENCHMARK(BM_Cauchy)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SymbolA2(benchmark::State& st) {
  const auto ch = GraphChart::sphere_cap(1.0);
  SymbolState s;
  s.chart = &ch;
  s.y = Vec2(0.2, -0.1);
  s.xi = Vec2(1.5, 2.0);
  s.h = 0.3;
  s.eps = 0.1;
  s.tau = 0.2;
  s.z = cplx(0.3, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(A2(s));
}
BENCHMARK(BM_SymbolA2);
BENCHMARK_MAIN();
