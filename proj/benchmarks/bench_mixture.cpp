#include <benchmark/benchmark.h>

#include "zetamix/mixing_densities.hpp"
#include "zetamix/mixture_engine.hpp"

namespace zm = zetamix;

static void BM_NbMixtureR1(benchmark::State& state) {
  const auto x = static_cast<zm::Count>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zm::nb_mixture_pmf(x, 1.0, 2.0));
}
BENCHMARK(BM_NbMixtureR1)->Arg(0)->Arg(20)->Arg(200);

// Nested quadrature: each outer node evaluates an inner integral.
static void BM_NbMixtureNested(benchmark::State& state) {
  const auto x = static_cast<zm::Count>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zm::nb_mixture_pmf(x, 2.5, 2.0));
}
BENCHMARK(BM_NbMixtureNested)->Arg(0)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_NbMixtureQuasi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zm::nb_mixture_pmf(5, 0.5, 2.0));
}
BENCHMARK(BM_NbMixtureQuasi)->Unit(benchmark::kMillisecond);

static void BM_MixingPdfGt1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zm::mixing_pdf_r_gt1(0.3, 2.5, 2.0));
}
BENCHMARK(BM_MixingPdfGt1);

static void BM_LambdaMixing(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zm::lambda_mixing_pdf(0.5, 1.5));
}
BENCHMARK(BM_LambdaMixing);

static void BM_PoissonMixture(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zm::poisson_mixture_pmf(5, 2.0));
}
BENCHMARK(BM_PoissonMixture)->Unit(benchmark::kMillisecond);

static void BM_VerifySmallGrid(benchmark::State& state) {
  zm::VerificationGrid grid;
  zm::IdentityGrid g;
  g.identity = zm::Identity::kYuleMixture;
  g.b = {0.5, 1.0, 2.5};
  for (zm::Count x = 0; x <= 15; ++x) g.x.push_back(x);
  grid.identities.push_back(g);
  zm::RunOptions options;
  options.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zm::run_verification_grid(grid, {}, options));
}
BENCHMARK(BM_VerifySmallGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
