#pragma once

#include <cstdint>
#include <random>

namespace selbias {

/// Reproducible random stream. Every draw is derived from the raw 64-bit
/// output of std::mt19937_64, whose sequence the standard fixes, so the same
/// (seed, index) gives bit-identical draws on every conforming platform.
class RandomStream {
 public:
  /// Independent substream for item `index` of a run seeded with `seed`.
  RandomStream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (lo, hi).
  double uniform_open(double lo, double hi);
  /// Standard exponential.
  double exponential();
  /// Standard normal (Box-Muller, no cached second variate).
  double normal();
  /// Uniform integer in [0, n). Precondition: n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace selbias
