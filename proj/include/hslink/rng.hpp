#pragma once

#include <cstdint>
#include <random>

namespace hslink {

/// Deterministic random source. Draws are generated from the raw mt19937_64
/// stream with fixed arithmetic so that sequences are reproducible across
/// platforms and standard library implementations (std::uniform_* make no
/// such guarantee).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 12345) : eng_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] via rejection-free modular draw; bias is
  /// negligible for the small ranges used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hslink
