#include "selbias/summaries.hpp"

#include <cmath>
#include <stdexcept>

namespace selbias {
namespace {

void require_oriented(double rr) {
  if (!(rr >= 1.0) || !std::isfinite(rr)) throw ParameterError("rr", rr);
}

}  // namespace

double summary_general(double rr) {
  require_oriented(rr);
  const double root = std::sqrt(rr);
  return root + std::sqrt(rr - root);
}

double summary_s_equals_u(double rr) {
  require_oriented(rr);
  return std::sqrt(rr);
}

double summary_directional(double rr) {
  require_oriented(rr);
  return rr + std::sqrt(rr * (rr - 1.0));
}

double summary_s_equals_u_directional(double rr) {
  require_oriented(rr);
  return rr;
}

double summary_value(const Scenario& scenario, double rr) {
  switch (scenario.kind) {
    case ScenarioKind::general:
      return summary_general(rr);
    case ScenarioKind::s_equals_u:
      return summary_s_equals_u(rr);
    case ScenarioKind::directional:
    case ScenarioKind::selected_population:
      return summary_directional(rr);
    case ScenarioKind::s_equals_u_directional:
      return summary_s_equals_u_directional(rr);
  }
  return summary_general(rr);
}

SummaryMeasure summary_for(const Scenario& scenario, const EffectEstimate& estimate,
                           std::optional<RiskRatio> target, LimitChoice limit) {
  RiskRatio chosen = estimate.point();
  switch (limit) {
    case LimitChoice::point:
      break;
    case LimitChoice::lower:
      if (!estimate.lower()) throw std::invalid_argument("no lower confidence limit supplied");
      chosen = *estimate.lower();
      break;
    case LimitChoice::upper:
      if (!estimate.upper()) throw std::invalid_argument("no upper confidence limit supplied");
      if (estimate.upper()->is_unbounded()) {
        throw std::invalid_argument("the upper confidence limit is unbounded");
      }
      chosen = estimate.upper()->ratio();
      break;
  }
  const auto bias = relative_bias(chosen, target.value_or(RiskRatio{1.0}));
  SummaryMeasure m;
  m.scenario = scenario;
  m.input_rr = bias.ratio;
  m.target = target;
  m.applied_to = limit;
  m.recoded = bias.recoded;
  m.value = summary_value(scenario, bias.ratio);
  return m;
}

std::optional<SummaryMeasure> summary_for_null_side_limit(const Scenario& scenario,
                                                          const EffectEstimate& estimate,
                                                          std::optional<RiskRatio> target) {
  const double t = target ? target->value() : 1.0;
  const bool above = estimate.point().value() >= t;
  const LimitChoice choice = above ? LimitChoice::lower : LimitChoice::upper;

  auto covering = [&] {
    SummaryMeasure m;
    m.scenario = scenario;
    m.target = target;
    m.applied_to = choice;
    m.recoded = !above;
    m.interval_covers_target = true;
    return m;
  };

  if (above) {
    if (!estimate.lower()) return std::nullopt;
    if (estimate.lower()->value() <= t) return covering();
  } else {
    if (!estimate.upper()) return std::nullopt;
    if (estimate.upper()->is_unbounded() || estimate.upper()->ratio().value() >= t) {
      return covering();
    }
  }
  return summary_for(scenario, estimate, target, choice);
}

}  // namespace selbias
