#pragma once

#include "selbias/risk_ratio.hpp"
#include "selbias/scenario.hpp"

namespace selbias {

/// The shared two-parameter kernel a*b / (a + b - 1).
///
/// For a, b >= 1 the result lies in [1, min(a, b)], is symmetric, and is
/// nondecreasing in each argument. Throws ParameterError (naming the
/// arguments "a" / "b") if either is below 1.
double joint_bound(double a, double b);

/// Upper bound on the relative bias RR_obs / RR_true for one scenario.
struct BoundingFactor {
  double value = 1.0;
  Scenario scenario;
  ScenarioParams params;
  /// Set only when a substitute association parameter was used for the
  /// selected-population bound; the value is then not a guaranteed bound.
  bool approximate = false;
};

/// Closed-form bound for the scenario the parameters belong to:
///
///   general                 joint_bound(uy1, su1) * joint_bound(uy0, su0)
///   s-equals-u              uy1 * uy0
///   directional             joint_bound(uy, su) of the stratum named by the direction
///   s-equals-u-directional  uy of that stratum
///   selected                joint_bound(uy_s1, association)
///
/// Throws ParameterError for any parameter below 1.
BoundingFactor bounding_factor(const ScenarioParams& params);

struct RelativeBias {
  double ratio = 1.0;    // always >= 1
  bool recoded = false;  // true when the exposure coding had to be reversed
};

/// max(observed / proposed_true, proposed_true / observed). `recoded` is set
/// when observed < proposed_true, i.e. the bound must be read with the
/// exposure levels swapped.
RelativeBias relative_bias(RiskRatio observed, RiskRatio proposed_true) noexcept;

/// Divides the point estimate and any finite confidence limits by the
/// bounding factor. Unbounded limits stay unbounded and results below 1 are
/// reported as-is: this is a worst-case shift, not an estimate.
EffectEstimate adjust_estimate(const EffectEstimate& estimate, const BoundingFactor& bound);

}  // namespace selbias
