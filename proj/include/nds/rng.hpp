#pragma once

#include <cstdint>

namespace nds {

// SplitMix64 finalizer (Steele/Lea/Vigna).
[[nodiscard]] inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// The project-wide deterministic generator: SplitMix64. Chosen because its
// sequences are bit-identical across platforms; the standard <random>
// distributions are implementation-defined and must not be used where
// reproducibility matters.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    return mix64(z);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // uniform in [0, n); modulo bias is negligible for the small ranges used
  // here and keeps the mapping platform-independent
  std::uint64_t uniform_index(std::uint64_t n) { return next() % n; }

  // Independent per-run stream, derived by counter-based splitting: the
  // double mix decorrelates the run streams from each other and from the
  // root sequence.
  static SplitMix64 for_run(std::uint64_t seed, std::uint64_t run_index) {
    return SplitMix64(
        mix64(seed ^ mix64(run_index + 0x9E3779B97F4A7C15ULL)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace nds
