#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace selbias::cli {
namespace {

const std::vector<std::string> kParameterKeys = {
    "rr-uy-a1", "rr-su-a1", "rr-uy-a0", "rr-su-a0",
    "rr-uy-s1", "rr-au-s1", "approx-su", "approx-sa",
};

const std::vector<std::string> kAssociationKeys = {"rr-au-s1", "approx-su", "approx-sa"};

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw InputError("--" + key + ": expected a number, got '" + text + "'");
  }
  return value;
}

template <class Int>
Int parse_integer(const std::string& key, const std::string& text) {
  Int value{};
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InputError("--" + key + ": expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

RiskRatio parse_ratio(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v <= 0.0) throw InputError("--" + key + ": must be > 0, got '" + text + "'");
  return RiskRatio{v};
}

ParamSpec parse_param(const std::string& key, const std::string& text) {
  ParamSpec spec;
  spec.flag = key;
  const auto colon = std::count(text.begin(), text.end(), ':');
  if (colon == 0) {
    spec.min = spec.max = parse_number(key, text);
    return spec;
  }
  if (colon != 2) {
    throw InputError("--" + key + ": a range is written min:max:steps, got '" + text + "'");
  }
  const auto a = text.find(':');
  const auto b = text.find(':', a + 1);
  spec.min = parse_number(key, text.substr(0, a));
  spec.max = parse_number(key, text.substr(a + 1, b - a - 1));
  spec.steps = parse_integer<std::size_t>(key, text.substr(b + 1));
  if (spec.min < 1.0 || spec.min > spec.max || spec.steps < 2) {
    throw InputError("--" + key + ": degenerate range '" + text +
                     "' (need 1 <= min <= max and steps >= 2)");
  }
  return spec;
}

std::string value_to_string(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    // Shortest round-trip form, so flags and files parse to the same double.
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, ptr);
  }
  if (v.is_object() && v.contains("min") && v.contains("max") && v.contains("steps")) {
    return value_to_string(key, v["min"]) + ":" + value_to_string(key, v["max"]) + ":" +
           value_to_string(key, v["steps"]);
  }
  throw InputError("config key '" + key + "' has an unsupported value: " + v.dump());
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "--" : " --") + f;
  return out;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = kParameterKeys;
    for (const char* extra : {"scenario", "est", "lo", "hi", "true", "scale", "output",
                              "precision", "k", "n", "seed", "threads", "mode"}) {
      k.emplace_back(extra);
    }
    return k;
  }();
  return keys;
}

RawInputs parse_config_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  RawInputs raw;
  const auto& keys = known_keys();
  for (const auto& [key, value] : doc.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError("unknown config key '" + key + "'");
    }
    raw[key] = value_to_string(key, value);
  }
  return raw;
}

RawInputs load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

std::vector<double> ParamSpec::values() const {
  if (!ranged()) return {min};
  std::vector<double> out(steps);
  const double span = max - min;
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  out.back() = max;
  return out;
}

std::vector<std::string> parameter_flags(const Scenario& scenario, const RawInputs& inputs) {
  const bool inc = scenario.direction == Direction::increased;
  switch (scenario.kind) {
    case ScenarioKind::general:
      return {"rr-uy-a1", "rr-su-a1", "rr-uy-a0", "rr-su-a0"};
    case ScenarioKind::s_equals_u:
      return {"rr-uy-a1", "rr-uy-a0"};
    case ScenarioKind::directional:
      return inc ? std::vector<std::string>{"rr-uy-a1", "rr-su-a1"}
                 : std::vector<std::string>{"rr-uy-a0", "rr-su-a0"};
    case ScenarioKind::s_equals_u_directional:
      return {inc ? "rr-uy-a1" : "rr-uy-a0"};
    case ScenarioKind::selected_population: {
      std::vector<std::string> given;
      for (const auto& key : kAssociationKeys) {
        if (inputs.count(key)) given.push_back(key);
      }
      if (given.size() > 1) {
        throw InputError("give only one of --rr-au-s1, --approx-su, --approx-sa");
      }
      return {"rr-uy-s1", given.empty() ? "rr-au-s1" : given.front()};
    }
  }
  return {};
}

AnalysisConfig parse_analysis(const RawInputs& in, bool need_params) {
  AnalysisConfig cfg;
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = in.find(key);
    return it == in.end() ? nullptr : &it->second;
  };

  const std::string scenario_name = get("scenario") ? *get("scenario") : "general";
  if (scenario_name == "mixed") {
    cfg.scenario = Scenario{ScenarioKind::general};
    cfg.mixed_directionality = true;
  } else if (auto sc = parse_scenario(scenario_name)) {
    cfg.scenario = *sc;
  } else {
    throw InputError("unknown scenario '" + scenario_name +
                     "' (general, s-equals-u, directional-increased, directional-decreased, "
                     "s-equals-u-directional[-increased|-decreased], selected, mixed)");
  }

  if (need_params) {
    const auto flags = parameter_flags(cfg.scenario, in);
    for (const auto& key : kParameterKeys) {
      if (in.count(key) && std::find(flags.begin(), flags.end(), key) == flags.end()) {
        throw InputError("--" + key + " does not apply to scenario '" + cfg.scenario.name() +
                         "' (expects " + join_flags(flags) + ")");
      }
    }
    for (const auto& flag : flags) {
      const auto* v = get(flag);
      if (!v) {
        throw InputError("scenario '" + cfg.scenario.name() + "' needs --" + flag +
                         " (a ratio >= 1); expects " + join_flags(flags));
      }
      cfg.params.push_back(parse_param(flag, *v));
    }
    if (cfg.scenario.kind == ScenarioKind::selected_population) {
      const auto& assoc = flags.back();
      cfg.association = assoc == "rr-au-s1"    ? Association::exact_au
                        : assoc == "approx-su" ? Association::approx_su
                                               : Association::approx_sa;
    }
  }

  if (const auto* est = get("est")) {
    const RiskRatio point = parse_ratio("est", *est);
    std::optional<RiskRatio> lower;
    std::optional<UpperLimit> upper;
    if (const auto* lo = get("lo")) lower = parse_ratio("lo", *lo);
    if (const auto* hi = get("hi")) {
      upper = (*hi == "inf" || *hi == "Inf" || *hi == "infinity")
                  ? UpperLimit::unbounded()
                  : UpperLimit::finite(parse_ratio("hi", *hi));
    }
    Scale scale = Scale::risk_ratio;
    if (const auto* sc = get("scale")) {
      const auto parsed = parse_scale(*sc);
      if (!parsed) throw InputError("--scale: expected rr, or or hr, got '" + *sc + "'");
      scale = *parsed;
    }
    try {
      cfg.estimate = EffectEstimate{point, lower, upper, scale};
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("estimate: ") + e.what());
    }
  } else if (get("lo") || get("hi")) {
    throw InputError("--lo/--hi need a point estimate (--est)");
  }

  if (const auto* t = get("true")) cfg.target = parse_ratio("true", *t);

  if (const auto* o = get("output")) {
    const auto fmt = parse_output_format(*o);
    if (!fmt) throw InputError("--output: expected text, csv, markdown or json, got '" + *o + "'");
    cfg.output = *fmt;
  }
  if (const auto* p = get("precision")) {
    cfg.precision = parse_integer<int>("precision", *p);
    if (cfg.precision > 17) throw InputError("--precision: at most 17 decimals");
  }
  if (const auto* k = get("k")) {
    cfg.k = parse_integer<std::size_t>("k", *k);
    if (cfg.k < 2 || cfg.k > 8) throw InputError("--k: U needs between 2 and 8 categories");
  }
  if (const auto* n = get("n")) {
    cfg.n = parse_integer<std::size_t>("n", *n);
    if (cfg.n < 1) throw InputError("--n: need at least one sample");
  }
  if (const auto* s = get("seed")) cfg.seed = parse_integer<std::uint64_t>("seed", *s);
  if (const auto* t = get("threads")) {
    cfg.threads = parse_integer<unsigned>("threads", *t);
    if (cfg.threads == 0) cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  }
  if (const auto* m = get("mode")) {
    if (*m == "sample") {
      cfg.mode = VerifyMode::sample;
    } else if (*m == "search") {
      cfg.mode = VerifyMode::search;
    } else {
      throw InputError("--mode: expected sample or search, got '" + *m + "'");
    }
  }
  return cfg;
}

ScenarioParams make_params(const AnalysisConfig& config, const std::vector<double>& v) {
  const Direction dir = config.scenario.direction;
  switch (config.scenario.kind) {
    case ScenarioKind::general:
      return GeneralParams{v.at(0), v.at(1), v.at(2), v.at(3)};
    case ScenarioKind::s_equals_u:
      return SEqualsUParams{v.at(0), v.at(1)};
    case ScenarioKind::directional:
      return DirectionalParams{dir, v.at(0), v.at(1)};
    case ScenarioKind::s_equals_u_directional:
      return SEqualsUDirectionalParams{dir, v.at(0)};
    case ScenarioKind::selected_population:
      return SelectedPopulationParams{v.at(0), config.association, v.at(1)};
  }
  return GeneralParams{};
}

std::string flag_for_parameter(const std::string& parameter) {
  std::string flag = "--" + parameter;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

}  // namespace selbias::cli
