#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/format.hpp"
#include "selbias/risk_ratio.hpp"
#include "selbias/scenario.hpp"

namespace selbias::cli {

/// Bad user input; the tool exits with status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Option values keyed by flag name without the leading dashes
/// ("rr-uy-a1" -> "2"). Config files and command-line flags both land here;
/// flags are applied last so they win.
using RawInputs = std::map<std::string, std::string>;

/// Every key accepted from flags or a config file.
const std::vector<std::string>& known_keys();

/// Reads a JSON object whose keys mirror the flag names. Values may be
/// numbers, strings ("inf", "1:2:5") or {"min", "max", "steps"} objects.
RawInputs load_config_file(const std::string& path);
RawInputs parse_config_json(const std::string& text);

/// A sensitivity parameter: fixed (steps == 1) or an evenly spaced range.
struct ParamSpec {
  std::string flag;  // e.g. "rr-uy-a1"
  double min = 1.0;
  double max = 1.0;
  std::size_t steps = 1;

  bool ranged() const noexcept { return steps > 1; }
  std::vector<double> values() const;
};

enum class VerifyMode { sample, search };

struct AnalysisConfig {
  Scenario scenario;
  bool mixed_directionality = false;  // "mixed" was requested; mapped to general
  std::vector<ParamSpec> params;      // in the scenario's parameter order
  Association association = Association::exact_au;
  std::optional<EffectEstimate> estimate;
  std::optional<RiskRatio> target;
  OutputFormat output = OutputFormat::text;
  int precision = 2;

  std::size_t k = 2;
  std::size_t n = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  VerifyMode mode = VerifyMode::sample;
};

/// Validates and converts merged inputs. `need_params` controls whether the
/// scenario's sensitivity parameters must be present.
AnalysisConfig parse_analysis(const RawInputs& inputs, bool need_params);

/// Flags naming the scenario's parameters, in bounding-factor order. For the
/// selected population the association flag is the one given in `inputs`.
std::vector<std::string> parameter_flags(const Scenario& scenario, const RawInputs& inputs);

/// Builds library parameters from one value per flag (same order as
/// AnalysisConfig::params).
ScenarioParams make_params(const AnalysisConfig& config, const std::vector<double>& values);

/// Library parameter name ("rr_uy_a1") to flag ("--rr-uy-a1").
std::string flag_for_parameter(const std::string& parameter);

}  // namespace selbias::cli
