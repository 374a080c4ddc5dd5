#pragma once

#include <cstdint>

namespace fplan {

/// Counter-based SplitMix64 generator. Cheap to seed, so each
/// (seed, iteration, particle) triple gets its own independent stream and the
/// draw sequence is reproducible regardless of evaluation order or thread
/// count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n) via Lemire's multiply-shift; n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t x = next_u64();
    const unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Mixes the triple into a fresh stream seed. The multipliers are distinct
/// large odd constants; a final SplitMix64 step would be redundant because the
/// generator itself scrambles its seed before the first output.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t iteration, std::uint64_t particle) {
  std::uint64_t s = seed;
  s ^= 0x9e3779b97f4a7c15ULL + iteration * 0xc2b2ae3d27d4eb4fULL;
  s ^= 0x165667b19e3779f9ULL + particle * 0xd6e8feb86659fd93ULL;
  return SplitMix64(s);
}

}  // namespace fplan
