#pragma once

// Counter-based random streams. Every Monte Carlo sample draws from its own
// stream keyed by (seed, sample index), so results are bitwise identical for
// any partition of samples across workers.

#include <cmath>
#include <cstdint>

namespace cubesect {

// SplitMix64 output finalizer. Bijective on 64-bit words; doubles as the
// hash that derives per-stream starting states.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : RngStream(seed, 0) {}

  // Stream `stream` of the family keyed by `seed`. Distinct stream ids give
  // statistically independent sequences.
  RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(splitmix64_mix(splitmix64_mix(seed) ^ (stream + kGamma))) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return splitmix64_mix(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method; the spare deviate is
  // cached, so consecutive calls cost one rejection loop per pair.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cubesect
