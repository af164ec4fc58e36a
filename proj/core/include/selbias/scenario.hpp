#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace selbias {

/// Direction of the selection-outcome association in both exposure strata.
/// `increased` bounds with the A=1 parameters, `decreased` with the A=0 ones.
enum class Direction { increased, decreased };

enum class ScenarioKind {
  general,                 // no assumption beyond Y independent of S given {A, U}
  s_equals_u,              // U is common to the whole selected population
  directional,             // selection shifts outcome risk the same way in both strata
  s_equals_u_directional,  // both of the above
  selected_population,     // target is the causal RR within S = 1
};

/// Scenario tag: which bound and summary formula applies.
struct Scenario {
  ScenarioKind kind = ScenarioKind::general;
  Direction direction = Direction::increased;  // only meaningful for directional kinds

  bool is_directional() const noexcept {
    return kind == ScenarioKind::directional || kind == ScenarioKind::s_equals_u_directional;
  }
  /// Canonical command-line name, e.g. "directional-decreased".
  std::string name() const;

  friend bool operator==(const Scenario& a, const Scenario& b) noexcept {
    return a.kind == b.kind && (!a.is_directional() || a.direction == b.direction);
  }
};

/// Parses the names produced by Scenario::name(). "s-equals-u-directional"
/// without a suffix means the increased-risk variant.
std::optional<Scenario> parse_scenario(std::string_view text) noexcept;

std::vector<Scenario> all_scenarios();

struct GeneralParams {
  double rr_uy_a1 = 1.0;
  double rr_su_a1 = 1.0;
  double rr_uy_a0 = 1.0;
  double rr_su_a0 = 1.0;
};

struct SEqualsUParams {
  double rr_uy_a1 = 1.0;
  double rr_uy_a0 = 1.0;
};

struct DirectionalParams {
  Direction direction = Direction::increased;
  double rr_uy = 1.0;
  double rr_su = 1.0;
};

struct SEqualsUDirectionalParams {
  Direction direction = Direction::increased;
  double rr_uy = 1.0;
};

/// How the exposure-U association within S = 1 is specified. Only `exact`
/// gives a guaranteed bound; the two substitutes give an approximate one.
enum class Association { exact_au, approx_su, approx_sa };

struct SelectedPopulationParams {
  double rr_uy_s1 = 1.0;
  Association association = Association::exact_au;
  double rr_association = 1.0;
};

using ScenarioParams = std::variant<GeneralParams, SEqualsUParams, DirectionalParams,
                                    SEqualsUDirectionalParams, SelectedPopulationParams>;

Scenario scenario_of(const ScenarioParams& params) noexcept;

/// (name, value) pairs in a fixed order, e.g. {"rr_uy_a1", 2.0}. Stratum-
/// specific names are used for directional variants.
std::vector<std::pair<std::string, double>> named_values(const ScenarioParams& params);

/// Raised when a sensitivity parameter is outside [1, inf).
class ParameterError : public std::domain_error {
 public:
  ParameterError(std::string parameter, double value);
  const std::string& parameter() const noexcept { return parameter_; }
  double value() const noexcept { return value_; }

 private:
  std::string parameter_;
  double value_;
};

/// Throws ParameterError for the first parameter that is < 1 or not finite.
void validate(const ScenarioParams& params);

}  // namespace selbias
