#include "cubesect/montecarlo.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cubesect/errors.hpp"
#include "cubesect/geometry.hpp"
#include "cubesect/rng.hpp"

namespace cubesect::mc {
namespace {

struct SampleRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<SampleRange> partition(std::uint64_t samples, unsigned workers) {
  std::vector<SampleRange> out;
  const std::uint64_t w = std::max<std::uint64_t>(workers, 1);
  const std::uint64_t base = samples / w;
  const std::uint64_t extra = samples % w;
  std::uint64_t cursor = 0;
  for (std::uint64_t i = 0; i < w; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    if (len == 0) continue;
    out.push_back({cursor, cursor + len});
    cursor += len;
  }
  return out;
}

// Runs body(worker_index, range) on each range, on threads when more than
// one range exists. The first worker exception (by worker index) rethrows.
template <class Body>
void run_partitioned(const std::vector<SampleRange>& ranges, const Body& body) {
  if (ranges.empty()) return;
  if (ranges.size() == 1) {
    body(0, ranges[0]);
    return;
  }
  std::vector<std::exception_ptr> errors(ranges.size());
  std::vector<std::thread> threads;
  threads.reserve(ranges.size());
  for (std::size_t w = 0; w < ranges.size(); ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w, ranges[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::uint64_t check_health(std::uint64_t samples, std::uint64_t discarded) {
  if (samples == 0) throw std::domain_error("estimate: samples must be >= 1");
  const double frac =
      static_cast<double>(discarded) / static_cast<double>(samples);
  if (discarded == samples || frac > kMaxDiscardFraction)
    throw DataQualityError("estimate: discarded " + std::to_string(discarded) +
                           " of " + std::to_string(samples) + " samples");
  return samples - discarded;
}

struct CountTallies {
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  std::uint64_t discarded = 0;
  CountHistogram histogram;
};

// Shared shell for the two per-sample-count estimators. make_counter() runs
// once per worker and returns the callable that maps a sample stream to a
// count, owning whatever scratch it needs.
template <class MakeCounter>
Estimate estimate_counts(const RunConfig& cfg, CountHistogram* histogram,
                         const MakeCounter& make_counter) {
  const auto ranges = partition(cfg.samples, resolve_workers(cfg.workers));
  std::vector<CountTallies> tallies(ranges.size());
  run_partitioned(ranges, [&](std::size_t w, const SampleRange& range) {
    auto count_one = make_counter();
    CountTallies& t = tallies[w];
    for (std::uint64_t i = range.lo; i < range.hi; ++i) {
      RngStream stream(cfg.seed, i);
      try {
        const std::uint64_t v = count_one(stream);
        t.sum += v;
        t.sum_sq += v * v;
        ++t.histogram[v];
      } catch (const DegenerateGeometryError&) {
        ++t.discarded;
      }
    }
  });

  CountTallies total;
  for (const CountTallies& t : tallies) {
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
    total.discarded += t.discarded;
    for (const auto& [v, c] : t.histogram) total.histogram[v] += c;
  }
  const std::uint64_t valid = check_health(cfg.samples, total.discarded);

  const double nn = static_cast<double>(valid);
  const double mean = static_cast<double>(total.sum) / nn;
  double se = 0.0;
  if (valid > 1) {
    const double centered =
        static_cast<double>(total.sum_sq) -
        static_cast<double>(total.sum) / nn * static_cast<double>(total.sum);
    se = std::sqrt(std::max(centered, 0.0) / (nn - 1.0) / nn);
  }
  if (histogram) *histogram = std::move(total.histogram);
  return {mean, se, cfg.samples, total.discarded, cfg.seed};
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::face_hit_lp: return "face_hit_lp";
    case Method::polygon_exact: return "polygon_exact";
    case Method::gaussian_hull: return "gaussian_hull";
  }
  return "unknown";
}

Estimate estimate_face_count(const RunConfig& cfg) {
  formulas::validate(cfg.query);
  if (cfg.samples == 0) throw std::domain_error("estimate: samples must be >= 1");
  if (!(cfg.eps >= 0.0)) throw std::domain_error("estimate: eps must be >= 0");
  const std::uint64_t j = cfg.query.j;
  const std::uint64_t k = cfg.query.k;
  const std::uint64_t n = cfg.query.n;
  const geometry::CubeFace face = geometry::canonical_face(j, k, n);
  // Orbit size: every j-face arises from the canonical one by choosing the
  // k-j pinned coordinates and their signs.
  const double orbit = std::ldexp(formulas::binomial_real(n, k - j),
                                  static_cast<int>(k - j));
  if (!std::isfinite(orbit))
    throw std::range_error("estimate_face_count: face orbit size overflows");

  struct HitTallies {
    std::uint64_t hits = 0;
    std::uint64_t discarded = 0;
  };
  const auto ranges = partition(cfg.samples, resolve_workers(cfg.workers));
  std::vector<HitTallies> tallies(ranges.size());
  run_partitioned(ranges, [&](std::size_t w, const SampleRange& range) {
    geometry::SubspaceSampler sampler(n, k);
    geometry::FaceHitTester tester(n, k, face, cfg.eps);
    HitTallies& t = tallies[w];
    for (std::uint64_t i = range.lo; i < range.hi; ++i) {
      RngStream stream(cfg.seed, i);
      try {
        switch (tester(sampler(stream))) {
          case geometry::HitOutcome::hit: ++t.hits; break;
          case geometry::HitOutcome::miss: break;
          case geometry::HitOutcome::degenerate: ++t.discarded; break;
        }
      } catch (const DegenerateGeometryError&) {
        ++t.discarded;
      }
    }
  });

  std::uint64_t hits = 0, discarded = 0;
  for (const HitTallies& t : tallies) {
    hits += t.hits;
    discarded += t.discarded;
  }
  const std::uint64_t valid = check_health(cfg.samples, discarded);

  const double nn = static_cast<double>(valid);
  const double p = static_cast<double>(hits) / nn;
  const double se = orbit * std::sqrt(std::max(p * (1.0 - p), 0.0) / nn);
  return {orbit * p, se, cfg.samples, discarded, cfg.seed};
}

Estimate estimate_polygon_fvector(const RunConfig& cfg, CountHistogram* histogram) {
  if (cfg.query.k != 2)
    throw std::domain_error("estimate_polygon_fvector requires k == 2");
  formulas::validate(cfg.query);
  if (!(cfg.eps >= 0.0)) throw std::domain_error("estimate: eps must be >= 0");
  const std::uint64_t n = cfg.query.n;
  const double eps = cfg.eps;
  return estimate_counts(cfg, histogram, [n, eps] {
    return [sampler = std::make_unique<geometry::SubspaceSampler>(n, 2),
            eps](RngStream& stream) mutable {
      const geometry::Polygon2D poly =
          geometry::section_polygon((*sampler)(stream), eps);
      return static_cast<std::uint64_t>(poly.vertices.size());
    };
  });
}

Estimate estimate_hull_fvector(const RunConfig& cfg, CountHistogram* histogram) {
  if (cfg.query.k != 2)
    throw std::domain_error("estimate_hull_fvector requires k == 2");
  formulas::validate(cfg.query);
  const std::uint64_t n = cfg.query.n;
  return estimate_counts(cfg, histogram, [n] {
    return [n](RngStream& stream) {
      return geometry::gaussian_hull_vertex_count(n, stream);
    };
  });
}

}  // namespace cubesect::mc
