#include "selbias/scenario.hpp"

#include "overloaded.hpp"

#include <cmath>
#include <sstream>

namespace selbias {
namespace {

std::string stratum_suffix(Direction d) { return d == Direction::increased ? "_a1" : "_a0"; }

std::string describe(const std::string& parameter, double value) {
  std::ostringstream os;
  os << "parameter " << parameter << " = " << value
     << " must be a finite ratio >= 1; each parameter is a max/min ratio, so a value "
        "below 1 means the reference level is reversed (supply the reciprocal or "
        "recode the reference level)";
  return os.str();
}

}  // namespace

std::string Scenario::name() const {
  const char* dir = direction == Direction::increased ? "increased" : "decreased";
  switch (kind) {
    case ScenarioKind::general:
      return "general";
    case ScenarioKind::s_equals_u:
      return "s-equals-u";
    case ScenarioKind::directional:
      return std::string("directional-") + dir;
    case ScenarioKind::s_equals_u_directional:
      return std::string("s-equals-u-directional-") + dir;
    case ScenarioKind::selected_population:
      return "selected";
  }
  return "general";
}

std::optional<Scenario> parse_scenario(std::string_view text) noexcept {
  using K = ScenarioKind;
  using D = Direction;
  if (text == "general") return Scenario{K::general, D::increased};
  if (text == "s-equals-u") return Scenario{K::s_equals_u, D::increased};
  if (text == "directional-increased") return Scenario{K::directional, D::increased};
  if (text == "directional-decreased") return Scenario{K::directional, D::decreased};
  if (text == "s-equals-u-directional" || text == "s-equals-u-directional-increased") {
    return Scenario{K::s_equals_u_directional, D::increased};
  }
  if (text == "s-equals-u-directional-decreased") {
    return Scenario{K::s_equals_u_directional, D::decreased};
  }
  if (text == "selected") return Scenario{K::selected_population, D::increased};
  return std::nullopt;
}

std::vector<Scenario> all_scenarios() {
  using K = ScenarioKind;
  using D = Direction;
  return {{K::general, D::increased},
          {K::s_equals_u, D::increased},
          {K::directional, D::increased},
          {K::directional, D::decreased},
          {K::s_equals_u_directional, D::increased},
          {K::s_equals_u_directional, D::decreased},
          {K::selected_population, D::increased}};
}

Scenario scenario_of(const ScenarioParams& params) noexcept {
  return std::visit(
      detail::overloaded{
          [](const GeneralParams&) { return Scenario{ScenarioKind::general}; },
          [](const SEqualsUParams&) { return Scenario{ScenarioKind::s_equals_u}; },
          [](const DirectionalParams& p) {
            return Scenario{ScenarioKind::directional, p.direction};
          },
          [](const SEqualsUDirectionalParams& p) {
            return Scenario{ScenarioKind::s_equals_u_directional, p.direction};
          },
          [](const SelectedPopulationParams&) {
            return Scenario{ScenarioKind::selected_population};
          },
      },
      params);
}

std::vector<std::pair<std::string, double>> named_values(const ScenarioParams& params) {
  return std::visit(
      detail::overloaded{
          [](const GeneralParams& p) -> std::vector<std::pair<std::string, double>> {
            return {{"rr_uy_a1", p.rr_uy_a1},
                    {"rr_su_a1", p.rr_su_a1},
                    {"rr_uy_a0", p.rr_uy_a0},
                    {"rr_su_a0", p.rr_su_a0}};
          },
          [](const SEqualsUParams& p) -> std::vector<std::pair<std::string, double>> {
            return {{"rr_uy_a1", p.rr_uy_a1}, {"rr_uy_a0", p.rr_uy_a0}};
          },
          [](const DirectionalParams& p) -> std::vector<std::pair<std::string, double>> {
            const auto sfx = stratum_suffix(p.direction);
            return {{"rr_uy" + sfx, p.rr_uy}, {"rr_su" + sfx, p.rr_su}};
          },
          [](const SEqualsUDirectionalParams& p)
              -> std::vector<std::pair<std::string, double>> {
            return {{"rr_uy" + stratum_suffix(p.direction), p.rr_uy}};
          },
          [](const SelectedPopulationParams& p)
              -> std::vector<std::pair<std::string, double>> {
            std::string assoc = p.association == Association::exact_au    ? "rr_au_s1"
                                : p.association == Association::approx_su ? "approx_su"
                                                                          : "approx_sa";
            return {{"rr_uy_s1", p.rr_uy_s1}, {assoc, p.rr_association}};
          },
      },
      params);
}

ParameterError::ParameterError(std::string parameter, double value)
    : std::domain_error(describe(parameter, value)),
      parameter_(std::move(parameter)),
      value_(value) {}

void validate(const ScenarioParams& params) {
  for (const auto& [name, value] : named_values(params)) {
    if (!(value >= 1.0) || !std::isfinite(value)) throw ParameterError(name, value);
  }
}

}  // namespace selbias
