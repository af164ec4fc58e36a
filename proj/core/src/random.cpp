#include "selbias/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace selbias {
namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : engine_(seeded(seed, index)) {}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open(double lo, double hi) {
  double u = 0.0;
  do {
    u = uniform();
  } while (u == 0.0);
  const double x = lo + (hi - lo) * u;
  return x < hi ? x : std::nextafter(hi, lo);
}

double RandomStream::exponential() { return -std::log1p(-uniform()); }

double RandomStream::normal() {
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace selbias
