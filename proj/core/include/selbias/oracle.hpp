#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "selbias/bounds.hpp"
#include "selbias/joint_distribution.hpp"
#include "selbias/risk_ratio.hpp"
#include "selbias/scenario.hpp"

namespace selbias {

/// Relative tolerance when deciding whether a realized bias exceeds a bound.
inline constexpr double kViolationTolerance = 1e-9;

// Exact population quantities of a JointDistribution. All are computed by
// marginalizing over u; no sampling is involved.

/// P(Y=1 | A=1, S=1) / P(Y=1 | A=0, S=1).
RiskRatio observed_rr(const JointDistribution& d);

/// P(Y=1 | A=1) / P(Y=1 | A=0) through the standardization over s and u:
///   sum_s { sum_u P(Y=1|a,s,u) P(u|a,s) } P(s|a).
RiskRatio true_rr_total(const JointDistribution& d);

/// The same quantity by direct marginalization, sum_u P(Y=1|a,u) P(u|a).
/// Algebraically equal to true_rr_total because Y is independent of S
/// given {A, U}.
RiskRatio true_rr_total_direct(const JointDistribution& d);

/// Causal RR within the selected population: the risks in each exposure
/// stratum standardized to P(u | S=1).
RiskRatio true_rr_selected(const JointDistribution& d);

/// P(Y=1 | A=a, S=1) / P(Y=1 | A=a, S=0) for a = 1 and a = 0; the
/// directional scenarios require both above 1 (increased) or both below 1
/// (decreased).
struct SelectionOutcomeRatios {
  double exposed = 1.0;
  double unexposed = 1.0;
};
SelectionOutcomeRatios selection_outcome_ratios(const JointDistribution& d);

/// Sensitivity parameters that `d` actually realizes for `scenario`:
///
///   RR_UY|A=a  max_u P(Y=1|a,u) / min_u P(Y=1|a,u)
///   RR_SU|A=1  max_u P(u|A=1,S=1) / P(u|A=1,S=0)
///   RR_SU|A=0  max_u P(u|A=0,S=0) / P(u|A=0,S=1)
///   RR_UY|S=1  max over a of the within-stratum max/min outcome-risk ratio
///   RR_AU|S=1  max_u P(u|A=1,S=1) / P(u|A=0,S=1)
///
/// Every value is >= 1 by construction. Directional scenarios take the
/// stratum named by the scenario's direction.
ScenarioParams realized_params(const JointDistribution& d, const Scenario& scenario);

struct Verification {
  bool skipped = false;  // directional precondition unmet; nothing was checked
  bool holds = true;
  bool recoded = false;  // exposure labels were swapped so that bias >= 1
  double bias = 1.0;     // oriented relative bias
  double bound = 1.0;
};

/// Orients `d` so the relative bias (observed over the scenario's true RR)
/// is >= 1, checks the directional precondition on the oriented law, and
/// compares the bias with bounding_factor(realized_params(...)).
Verification verify_bound(const JointDistribution& d, const Scenario& scenario);

struct OracleReport {
  std::size_t k = 2;
  Scenario scenario;
  std::uint64_t seed = 0;
  std::size_t samples = 0;     // distributions evaluated
  std::size_t skipped = 0;     // of which precondition unmet
  std::size_t violations = 0;  // bias > bound * (1 + kViolationTolerance)
  double max_bias_over_bound_ratio = 0.0;
  std::optional<JointDistribution> worst_case;
};

/// The selection structure the oracle uses when generating laws for
/// `scenario`: binary, eps-deterministic selection for the S = U kinds.
SelectionStructure structure_for(const Scenario& scenario) noexcept;

/// Draws `samples` distributions, sample i from substream (seed, i), and
/// verifies each. Work is split over `threads` workers; the report does not
/// depend on the thread count.
OracleReport run_verification(std::size_t k, const Scenario& scenario, std::size_t samples,
                              std::uint64_t seed, unsigned threads = 1);

/// Random-restart hill climbing over (P(A,U), P(S|A,U), P(Y|A,U)) in
/// log/logit coordinates, maximizing bias / bound. Every evaluated candidate
/// counts against `budget` and is checked for violations. Deterministic for
/// a given seed.
OracleReport tightness_search(std::size_t k, const Scenario& scenario, std::size_t budget,
                              std::uint64_t seed);

}  // namespace selbias
