#include <benchmark/benchmark.h>

#include "zetamix/distributions.hpp"
#include "zetamix/special_functions.hpp"

namespace zm = zetamix;

static void BM_RiemannZeta(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(zm::riemann_zeta(s));
}
BENCHMARK(BM_RiemannZeta)->Arg(11)->Arg(15)->Arg(20)->Arg(30);

static void BM_HurwitzTail(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zm::hurwitz_zeta(1.5, n));
}
BENCHMARK(BM_HurwitzTail)->Arg(0)->Arg(100)->Arg(1 << 20);

static void BM_LogGamma(benchmark::State& state) {
  double z = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zm::log_gamma(z));
    z = z < 1e6 ? z * 1.7 : 0.5;
  }
}
BENCHMARK(BM_LogGamma);

static void BM_NbPmf(benchmark::State& state) {
  const zm::NbParams params(3.7, 0.4);
  zm::Count x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zm::nb_pmf(x, params));
    x = (x + 1) % 200;
  }
}
BENCHMARK(BM_NbPmf);
