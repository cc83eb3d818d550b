#include <benchmark/benchmark.h>

#include <cstdint>

#include "cubesect/analysis.hpp"
#include "cubesect/formulas.hpp"

namespace analysis = cubesect::analysis;
namespace formulas = cubesect::formulas;

namespace {

// Cost of the adaptive quadrature as the indicator power grows and the
// integrand concentrates into an ever narrower window.
void IntegralByPower(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(analysis::cube_gauss_integral(2.0, m, 1e-10));
}
BENCHMARK(IntegralByPower)->RangeMultiplier(8)->Range(8, 1 << 17);

void IntegralByTolerance(benchmark::State& state) {
  const double tol = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(analysis::cube_gauss_integral(2.0, 64, tol));
}
BENCHMARK(IntegralByTolerance)
    ->RangeMultiplier(1000)
    ->Range(1'000'000, 1'000'000'000'000'000);

void VertexCountFormula(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(formulas::expected_vertex_count(k, 24, 1e-10));
}
BENCHMARK(VertexCountFormula)->DenseRange(1, 5);

void BoundPairFormula(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(formulas::face_count_bounds({2, 5, 12}, 1e-10));
}
BENCHMARK(BoundPairFormula);

void CubeMeasureDeepTail(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(analysis::gaussian_cube_measure(1'000'000, 4.0));
}
BENCHMARK(CubeMeasureDeepTail);

}  // namespace

BENCHMARK_MAIN();
