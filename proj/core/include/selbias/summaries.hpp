#pragma once

#include <optional>

#include "selbias/bounds.hpp"
#include "selbias/risk_ratio.hpp"
#include "selbias/scenario.hpp"

namespace selbias {

// Summary measures: the common value every parameter of a scenario's
// bounding factor would need to reach for selection bias alone to move an
// (oriented) risk ratio `rr` to the null. Each throws ParameterError if
// rr < 1; orient first with relative_bias.

/// sqrt(rr) + sqrt(rr - sqrt(rr)); all four general-scenario parameters.
double summary_general(double rr);

/// sqrt(rr); both S = U parameters.
double summary_s_equals_u(double rr);

/// rr + sqrt(rr * (rr - 1)); the E-value form, shared by the directional and
/// selected-population scenarios.
double summary_directional(double rr);

/// rr itself; the single S = U directional parameter.
double summary_s_equals_u_directional(double rr);

/// Dispatches to the scenario's formula.
double summary_value(const Scenario& scenario, double rr);

enum class LimitChoice { point, lower, upper };

struct SummaryMeasure {
  double value = 1.0;
  Scenario scenario;
  double input_rr = 1.0;               // oriented relative bias the formula was applied to
  std::optional<RiskRatio> target;     // nullopt means the null (1)
  LimitChoice applied_to = LimitChoice::point;
  bool recoded = false;
  /// Set when the chosen confidence limit already lies on or across the
  /// target, so no bias at all is needed (value is then 1).
  bool interval_covers_target = false;
};

/// Summary measure for one value of `estimate`, measured against `target`
/// (the null when nullopt). Throws std::invalid_argument if the chosen limit
/// is absent or unbounded.
SummaryMeasure summary_for(const Scenario& scenario, const EffectEstimate& estimate,
                           std::optional<RiskRatio> target, LimitChoice limit);

/// Summary measure for the confidence limit nearer the target: the lower
/// limit when the point estimate is at or above the target, the upper limit
/// otherwise. Returns value 1 with interval_covers_target set if that limit
/// reaches the target. Returns nullopt if the needed limit was not supplied.
std::optional<SummaryMeasure> summary_for_null_side_limit(const Scenario& scenario,
                                                          const EffectEstimate& estimate,
                                                          std::optional<RiskRatio> target);

}  // namespace selbias
