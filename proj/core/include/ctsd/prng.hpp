#pragma once

#include <cstdint>

namespace ctsd {

/// splitmix64: the 64-bit mixer from Steele et al.'s SplittableRandom.
/// Fully specified here so streams are bit-identical on every platform;
/// all randomness in the library flows through this generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Derives the generator for an independent stream, e.g. one per tree or
  /// per video, from a base seed and a stream index.
  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 base(seed);
    std::uint64_t mixed = base.next();
    return SplitMix64(mixed + 0x9E3779B97F4A7C15ULL * (stream + 1));
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n) via the multiply-shift map; n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace ctsd
