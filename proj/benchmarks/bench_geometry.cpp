#include <benchmark/benchmark.h>

#include <cstdint>

#include "cubesect/geometry.hpp"
#include "cubesect/montecarlo.hpp"
#include "cubesect/rng.hpp"

namespace geometry = cubesect::geometry;
namespace mc = cubesect::mc;
using cubesect::RngStream;

namespace {

void HaarSample(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  geometry::SubspaceSampler sample(n, 3);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng(1, i++);
    benchmark::DoNotOptimize(sample(rng).columns.data());
  }
}
BENCHMARK(HaarSample)->RangeMultiplier(2)->Range(8, 64);

// Per-sample cost of the hit test, fast path and LP fallback combined,
// exactly as the estimator drives it.
void FaceHitPerSample(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  geometry::SubspaceSampler sample(n, 3);
  geometry::FaceHitTester hit(n, 3, geometry::canonical_face(1, 3, n));
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng(1, i++);
    benchmark::DoNotOptimize(hit(sample(rng)));
  }
}
BENCHMARK(FaceHitPerSample)->RangeMultiplier(2)->Range(8, 64);

void SectionPolygonPerSample(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  geometry::SubspaceSampler sample(n, 2);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng(1, i++);
    benchmark::DoNotOptimize(geometry::section_polygon(sample(rng)).vertices.size());
  }
}
BENCHMARK(SectionPolygonPerSample)->RangeMultiplier(2)->Range(8, 64);

void HullCountPerSample(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng(1, i++);
    benchmark::DoNotOptimize(geometry::gaussian_hull_vertex_count(n, rng));
  }
}
BENCHMARK(HullCountPerSample)->RangeMultiplier(2)->Range(8, 64);

void EstimateEndToEnd(benchmark::State& state) {
  mc::RunConfig cfg;
  cfg.query = {1, 3, 8};
  cfg.samples = static_cast<std::uint64_t>(state.range(0));
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(mc::estimate_face_count(cfg));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          state.range(0));
}
BENCHMARK(EstimateEndToEnd)->Arg(1'000)->Arg(10'000);

}  // namespace
