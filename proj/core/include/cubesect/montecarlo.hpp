#pragma once

// Monte Carlo estimators over Haar-random subspaces. All per-sample
// randomness comes from the stream keyed by (seed, sample index) and all
// aggregation is exact integer arithmetic, so estimates are bitwise
// reproducible for any worker count.

#include <cstdint>
#include <map>

#include "cubesect/formulas.hpp"

namespace cubesect::mc {

inline constexpr std::uint64_t kDefaultSamples = 100'000;
inline constexpr std::uint64_t kDefaultSeed = 1;
// Runs whose discard fraction exceeds this are rejected as unhealthy.
inline constexpr double kMaxDiscardFraction = 1e-3;

enum class Method { face_hit_lp, polygon_exact, gaussian_hull };

const char* method_name(Method m);

struct RunConfig {
  formulas::FaceQuery query;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;  // 0 picks the hardware concurrency
  double eps = 1e-9;     // slack for boundary-grazing hits
  Method method = Method::face_hit_lp;
};

// `samples` counts draws attempted; mean and std_error are computed over
// samples - discarded. Healthy runs discard (almost) nothing.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t discarded = 0;
  std::uint64_t seed = 0;
};

// Distribution of per-sample counts, for shape diagnostics.
using CountHistogram = std::map<std::uint64_t, std::uint64_t>;

// Estimates the expected number of j-faces for cfg.query: hit frequency of
// the canonical face scaled by the face-orbit size 2^(k-j) C(n, k-j).
// Throws DataQualityError when the discard fraction exceeds the threshold.
Estimate estimate_face_count(const RunConfig& cfg);

// Mean vertex count of exact planar section polygons; requires query.k == 2
// and ignores query.j (the polygon determines all of its faces at once).
Estimate estimate_polygon_fvector(const RunConfig& cfg,
                                  CountHistogram* histogram = nullptr);

// Mean hull vertex count of n symmetrized planar Gaussians, distributed
// identically to the polygon vertex count; requires query.k == 2.
Estimate estimate_hull_fvector(const RunConfig& cfg,
                               CountHistogram* histogram = nullptr);

}  // namespace cubesect::mc
