#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace selbias {

/// A strictly positive, finite relative-effect magnitude (RR, or an OR/HR
/// read as an RR approximation).
class RiskRatio {
 public:
  /// Throws std::invalid_argument unless `value` is finite and > 0.
  explicit RiskRatio(double value);

  double value() const noexcept { return value_; }
  RiskRatio reciprocal() const { return RiskRatio{1.0 / value_}; }

  friend bool operator==(RiskRatio, RiskRatio) = default;
  friend auto operator<=>(RiskRatio, RiskRatio) = default;

 private:
  double value_;
};

/// Upper confidence limit: either a finite ratio or the unbounded marker.
class UpperLimit {
 public:
  static UpperLimit unbounded() noexcept { return UpperLimit{}; }
  static UpperLimit finite(RiskRatio rr) noexcept { return UpperLimit{rr}; }

  bool is_unbounded() const noexcept { return !value_.has_value(); }
  /// Precondition: !is_unbounded().
  RiskRatio ratio() const { return *value_; }

  friend bool operator==(const UpperLimit&, const UpperLimit&) = default;

 private:
  UpperLimit() = default;
  explicit UpperLimit(RiskRatio rr) : value_(rr) {}
  std::optional<RiskRatio> value_;
};

enum class Scale { risk_ratio, odds_ratio_approx, hazard_ratio_approx };

std::string_view to_string(Scale scale) noexcept;
/// Accepts "rr", "or", "hr" and the full enumerator names.
std::optional<Scale> parse_scale(std::string_view text) noexcept;

/// Point estimate with optional two-sided confidence limits.
class EffectEstimate {
 public:
  /// Throws std::invalid_argument if the limits do not bracket the point.
  explicit EffectEstimate(RiskRatio point,
                          std::optional<RiskRatio> lower = std::nullopt,
                          std::optional<UpperLimit> upper = std::nullopt,
                          Scale scale = Scale::risk_ratio);

  RiskRatio point() const noexcept { return point_; }
  const std::optional<RiskRatio>& lower() const noexcept { return lower_; }
  const std::optional<UpperLimit>& upper() const noexcept { return upper_; }
  Scale scale() const noexcept { return scale_; }

  /// The same estimate with the exposure coding reversed: every value is
  /// inverted and the limits swap roles. Fails if the upper limit is
  /// unbounded, since its reciprocal would be a lower limit of zero.
  EffectEstimate reciprocal() const;

  friend bool operator==(const EffectEstimate&, const EffectEstimate&) = default;

 private:
  RiskRatio point_;
  std::optional<RiskRatio> lower_;
  std::optional<UpperLimit> upper_;
  Scale scale_;
};

}  // namespace selbias
