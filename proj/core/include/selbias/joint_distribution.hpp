#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "selbias/random.hpp"

namespace selbias {

/// Positivity floor for every probability in a JointDistribution.
inline constexpr double kPositivityFloor = 1e-9;

/// How P(S = 1 | a, u) is generated.
enum class SelectionStructure {
  free,        // every cell drawn independently
  s_equals_u,  // binary U drives selection: P(S=1|a,0) = eps, P(S=1|a,1) = 1 - eps
};

/// Exact joint law of (U, A, S, Y) with U categorical on k levels, stored as
///
///   P(A = a, U = u),  P(S = 1 | a, u),  P(Y = 1 | a, u).
///
/// Y is independent of S given {A, U} by construction: the outcome table is
/// not indexed by s. Within this construction conditional risks are causal,
/// so the standardized quantities computed by the oracle are the true RRs.
class JointDistribution {
 public:
  /// Tables are laid out a-major: index a * k + u. Throws
  /// std::invalid_argument on any violated invariant (k >= 2, every entry
  /// within [floor, 1 - floor], P(A, U) summing to 1 within 1e-12).
  JointDistribution(std::size_t k, std::vector<double> p_au, std::vector<double> p_select,
                    std::vector<double> p_outcome);

  std::size_t categories() const noexcept { return k_; }

  double p_au(int a, std::size_t u) const { return p_au_[index(a, u)]; }
  double p_select(int a, std::size_t u) const { return p_select_[index(a, u)]; }
  double p_outcome(int a, std::size_t u) const { return p_outcome_[index(a, u)]; }

  std::span<const double> p_au_table() const noexcept { return p_au_; }
  std::span<const double> p_select_table() const noexcept { return p_select_; }
  std::span<const double> p_outcome_table() const noexcept { return p_outcome_; }

  /// The same law with the exposure labels swapped.
  JointDistribution with_exposure_recoded() const;

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

 private:
  std::size_t index(int a, std::size_t u) const { return static_cast<std::size_t>(a) * k_ + u; }

  std::size_t k_;
  std::vector<double> p_au_;
  std::vector<double> p_select_;
  std::vector<double> p_outcome_;
};

/// Random instance: P(A, U) from normalized exponential weights (uniform on
/// the simplex) shifted onto the positivity floor, conditionals uniform on
/// (floor, 1 - floor). s_equals_u requires k == 2.
JointDistribution sample_joint(std::size_t k, RandomStream& rng,
                               SelectionStructure structure = SelectionStructure::free);

/// Convenience overload drawing from substream 0 of `seed`.
JointDistribution sample_joint(std::size_t k, std::uint64_t seed,
                               SelectionStructure structure = SelectionStructure::free);

/// Maps nonnegative weights onto a P(A, U) table with every entry >= floor.
std::vector<double> weights_to_table(std::span<const double> weights);

}  // namespace selbias
