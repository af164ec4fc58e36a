#include "selbias/risk_ratio.hpp"

#include <cmath>
#include <stdexcept>

namespace selbias {

RiskRatio::RiskRatio(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument("risk ratio must be finite and > 0, got " +
                                std::to_string(value));
  }
}

std::string_view to_string(Scale scale) noexcept {
  switch (scale) {
    case Scale::risk_ratio:
      return "risk_ratio";
    case Scale::odds_ratio_approx:
      return "odds_ratio_approx";
    case Scale::hazard_ratio_approx:
      return "hazard_ratio_approx";
  }
  return "risk_ratio";
}

std::optional<Scale> parse_scale(std::string_view text) noexcept {
  if (text == "rr" || text == "risk_ratio") return Scale::risk_ratio;
  if (text == "or" || text == "odds_ratio_approx") return Scale::odds_ratio_approx;
  if (text == "hr" || text == "hazard_ratio_approx") return Scale::hazard_ratio_approx;
  return std::nullopt;
}

EffectEstimate::EffectEstimate(RiskRatio point, std::optional<RiskRatio> lower,
                               std::optional<UpperLimit> upper, Scale scale)
    : point_(point), lower_(lower), upper_(upper), scale_(scale) {
  if (lower_ && lower_->value() > point_.value()) {
    throw std::invalid_argument("lower confidence limit exceeds the point estimate");
  }
  if (upper_ && !upper_->is_unbounded() && upper_->ratio().value() < point_.value()) {
    throw std::invalid_argument("upper confidence limit is below the point estimate");
  }
}

EffectEstimate EffectEstimate::reciprocal() const {
  if (upper_ && upper_->is_unbounded()) {
    throw std::invalid_argument(
        "cannot reverse the exposure coding of an estimate with an unbounded upper limit");
  }
  std::optional<RiskRatio> new_lower;
  std::optional<UpperLimit> new_upper;
  if (upper_) new_lower = upper_->ratio().reciprocal();
  if (lower_) new_upper = UpperLimit::finite(lower_->reciprocal());
  return EffectEstimate{point_.reciprocal(), new_lower, new_upper, scale_};
}

}  // namespace selbias
