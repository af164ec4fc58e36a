#include "selbias/bounds.hpp"

#include "overloaded.hpp"

#include <algorithm>
#include <cmath>

namespace selbias {
namespace {

double kernel(double a, double b) {
  if (a == 1.0 || b == 1.0) return 1.0;
  // Rounding may not land inside [1, min(a, b)] when a or b is near 1.
  return std::clamp(a * b / (a + b - 1.0), 1.0, std::min(a, b));
}

}  // namespace

double joint_bound(double a, double b) {
  if (!(a >= 1.0) || !std::isfinite(a)) throw ParameterError("a", a);
  if (!(b >= 1.0) || !std::isfinite(b)) throw ParameterError("b", b);
  return kernel(a, b);
}

BoundingFactor bounding_factor(const ScenarioParams& params) {
  validate(params);
  BoundingFactor bf;
  bf.scenario = scenario_of(params);
  bf.params = params;
  bf.value = std::visit(
      detail::overloaded{
          [](const GeneralParams& p) {
            return kernel(p.rr_uy_a1, p.rr_su_a1) * kernel(p.rr_uy_a0, p.rr_su_a0);
          },
          [](const SEqualsUParams& p) { return p.rr_uy_a1 * p.rr_uy_a0; },
          [](const DirectionalParams& p) { return kernel(p.rr_uy, p.rr_su); },
          [](const SEqualsUDirectionalParams& p) { return p.rr_uy; },
          [](const SelectedPopulationParams& p) { return kernel(p.rr_uy_s1, p.rr_association); },
      },
      params);
  if (const auto* sel = std::get_if<SelectedPopulationParams>(&params)) {
    bf.approximate = sel->association != Association::exact_au;
  }
  return bf;
}

RelativeBias relative_bias(RiskRatio observed, RiskRatio proposed_true) noexcept {
  const double o = observed.value();
  const double t = proposed_true.value();
  if (o < t) return {t / o, true};
  return {o / t, false};
}

EffectEstimate adjust_estimate(const EffectEstimate& estimate, const BoundingFactor& bound) {
  const double f = bound.value;
  std::optional<RiskRatio> lower;
  std::optional<UpperLimit> upper;
  if (estimate.lower()) lower = RiskRatio{estimate.lower()->value() / f};
  if (estimate.upper()) {
    upper = estimate.upper()->is_unbounded()
                ? UpperLimit::unbounded()
                : UpperLimit::finite(RiskRatio{estimate.upper()->ratio().value() / f});
  }
  return EffectEstimate{RiskRatio{estimate.point().value() / f}, lower, upper,
                        estimate.scale()};
}

}  // namespace selbias
