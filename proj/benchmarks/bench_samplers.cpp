#include <benchmark/benchmark.h>

#include "zetamix/samplers.hpp"

namespace zm = zetamix;

namespace {

template <auto Chain>
void chain_bench(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0)) / 10.0;
  constexpr std::size_t n = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(Chain(s, n, zm::SeededStream{7, 0}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

}  // namespace

BENCHMARK(chain_bench<&zm::sample_zeta_direct>)
    ->Name("BM_SampleDirect")->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(chain_bench<&zm::sample_zeta_via_geometric_chain>)
    ->Name("BM_SampleGeometric")->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(chain_bench<&zm::sample_zeta_via_poisson_chain>)
    ->Name("BM_SamplePoisson")->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_ZetaSamplerSetup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zm::ZetaSampler(1.2));
}
BENCHMARK(BM_ZetaSamplerSetup)->Unit(benchmark::kMicrosecond);

static void BM_FitAgainstZeta(benchmark::State& state) {
  const auto samples = zm::sample_zeta_direct(2.0, 100000, {3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(zm::fit_against_zeta(samples, 2.0, 1e-6));
}
BENCHMARK(BM_FitAgainstZeta)->Unit(benchmark::kMillisecond);
