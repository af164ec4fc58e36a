#include "selbias/joint_distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace selbias {
namespace {

void check_table(const std::vector<double>& table, std::size_t k, const char* name) {
  if (table.size() != 2 * k) {
    throw std::invalid_argument(std::string(name) + " must have 2*k entries");
  }
  // The P(A, U) construction can land a rounding step under the floor.
  constexpr double lo = kPositivityFloor * (1.0 - 1e-9);
  constexpr double hi = 1.0 - lo;
  for (double p : table) {
    if (!(p >= lo && p <= hi)) {
      throw std::invalid_argument(std::string(name) + " entry " + std::to_string(p) +
                                  " violates positivity");
    }
  }
}

}  // namespace

JointDistribution::JointDistribution(std::size_t k, std::vector<double> p_au,
                                     std::vector<double> p_select,
                                     std::vector<double> p_outcome)
    : k_(k),
      p_au_(std::move(p_au)),
      p_select_(std::move(p_select)),
      p_outcome_(std::move(p_outcome)) {
  if (k_ < 2) throw std::invalid_argument("U needs at least 2 categories");
  check_table(p_au_, k_, "P(A,U)");
  check_table(p_select_, k_, "P(S=1|A,U)");
  check_table(p_outcome_, k_, "P(Y=1|A,U)");
  const double total = std::accumulate(p_au_.begin(), p_au_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("P(A,U) sums to " + std::to_string(total) + ", not 1");
  }
}

JointDistribution JointDistribution::with_exposure_recoded() const {
  auto swap_halves = [this](const std::vector<double>& t) {
    std::vector<double> out(t.size());
    for (std::size_t u = 0; u < k_; ++u) {
      out[u] = t[k_ + u];
      out[k_ + u] = t[u];
    }
    return out;
  };
  return JointDistribution{k_, swap_halves(p_au_), swap_halves(p_select_),
                           swap_halves(p_outcome_)};
}

std::vector<double> weights_to_table(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double n = static_cast<double>(weights.size());
  const double scale = 1.0 - n * kPositivityFloor;
  std::vector<double> table(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    table[i] = kPositivityFloor + scale * (total > 0.0 ? weights[i] / total : 1.0 / n);
  }
  return table;
}

JointDistribution sample_joint(std::size_t k, RandomStream& rng, SelectionStructure structure) {
  if (k < 2) throw std::invalid_argument("U needs at least 2 categories");
  if (structure == SelectionStructure::s_equals_u && k != 2) {
    throw std::invalid_argument("S = U construction needs binary U (k = 2)");
  }
  constexpr double lo = kPositivityFloor;
  constexpr double hi = 1.0 - kPositivityFloor;

  std::vector<double> weights(2 * k);
  for (auto& w : weights) w = rng.exponential();

  std::vector<double> select(2 * k);
  if (structure == SelectionStructure::s_equals_u) {
    for (int a = 0; a < 2; ++a) {
      select[a * k + 0] = lo;
      select[a * k + 1] = hi;
    }
  } else {
    for (auto& s : select) s = rng.uniform_open(lo, hi);
  }

  std::vector<double> outcome(2 * k);
  for (auto& y : outcome) y = rng.uniform_open(lo, hi);

  return JointDistribution{k, weights_to_table(weights), std::move(select), std::move(outcome)};
}

JointDistribution sample_joint(std::size_t k, std::uint64_t seed, SelectionStructure structure) {
  RandomStream rng(seed, 0);
  return sample_joint(k, rng, structure);
}

}  // namespace selbias
