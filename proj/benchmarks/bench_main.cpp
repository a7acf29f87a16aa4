#include <benchmark/benchmark.h>

#include "dilatox/beltrami.hpp"
#include "dilatox/catalog.hpp"
#include "dilatox/functionals.hpp"
#include "dilatox/verifier.hpp"

using namespace dilatox;

namespace {

void BM_CircularMean(benchmark::State& state) {
  QuadratureConfig cfg;
  cfg.n_theta = static_cast<int>(state.range(0));
  const auto map = catalog::linear(std::polar(0.7, 1.1)).map;
  for (auto _ : state) benchmark::DoNotOptimize(dilatation_mean(map, 0.3, DilatationOrder(3.0), cfg));
}
BENCHMARK(BM_CircularMean)->Arg(128)->Arg(512)->Arg(2048);

void BM_DiscMean(benchmark::State& state) {
  QuadratureConfig cfg;
  cfg.n_r = static_cast<int>(state.range(0));
  const auto map = catalog::log_singular(3.0).map;
  for (auto _ : state) benchmark::DoNotOptimize(disc_mean(map, 0.25, DilatationOrder(3.0), cfg));
}
BENCHMARK(BM_DiscMean)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Area(benchmark::State& state) {
  const QuadratureConfig cfg;
  const auto map = catalog::radial_stretch(1.0).map;
  for (auto _ : state) benchmark::DoNotOptimize(area(map, 0.5, cfg));
}
BENCHMARK(BM_Area)->Unit(benchmark::kMillisecond);

void BM_SolveRadial(benchmark::State& state) {
  const auto coef = SigmaCoefficient::power(2.0, 1.0);
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_radial(coef, {0.5, 1.0, 0.05, 0.95, step}));
}
BENCHMARK(BM_SolveRadial)->Arg(1000)->Arg(10000);

void BM_Theorem1(benchmark::State& state) {
  const QuadratureConfig cfg;
  const auto map = catalog::linear(std::polar(0.5, 0.0)).map;
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_bound(map, DilatationOrder(4.0), RadiusLadder{}, cfg));
}
BENCHMARK(BM_Theorem1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
