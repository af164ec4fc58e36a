#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include "cli/cli.hpp"
#include "selbias/bounds.hpp"
#include "selbias/oracle.hpp"
#include "selbias/summaries.hpp"

namespace selbias::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kMixedNote =
    "mixed directionality has no tighter bound; using the general scenario";
constexpr const char* kRecodedNote =
    "estimate below 1: exposure coding reversed, so A=1 parameters refer to the "
    "original reference level";
constexpr const char* kApproxNote =
    "approximate bound: a substitute association parameter replaces rr_au_s1";

std::string fmt_estimate(const EffectEstimate& e, int precision) {
  std::string s = fixed(e.point().value(), precision);
  if (e.lower() || e.upper()) {
    s += " [";
    s += e.lower() ? fixed(e.lower()->value(), precision) : "NA";
    s += ", ";
    if (!e.upper()) {
      s += "NA";
    } else {
      s += e.upper()->is_unbounded() ? "inf" : fixed(e.upper()->ratio().value(), precision);
    }
    s += "]";
  }
  return s;
}

std::string limit_cell(const std::optional<RiskRatio>& r, int precision) {
  return r ? fixed(r->value(), precision) : "";
}

std::string upper_cell(const std::optional<UpperLimit>& u, int precision) {
  if (!u) return "";
  return u->is_unbounded() ? "inf" : fixed(u->ratio().value(), precision);
}

// Orients an estimate below 1 by reversing the exposure coding.
std::optional<EffectEstimate> oriented_estimate(const AnalysisConfig& cfg, bool& recoded) {
  recoded = false;
  if (!cfg.estimate) return std::nullopt;
  if (cfg.estimate->point().value() >= 1.0) return cfg.estimate;
  recoded = true;
  try {
    return cfg.estimate->reciprocal();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("estimate below 1: ") + e.what());
  }
}

BoundingFactor compute_bound(const AnalysisConfig& cfg, const std::vector<double>& values) {
  return bounding_factor(make_params(cfg, values));
}

json params_json(const ScenarioParams& params) {
  json j = json::object();
  for (const auto& [name, value] : named_values(params)) j[name] = value;
  return j;
}

void emit(std::ostream& out, const AnalysisConfig& cfg, const std::vector<std::string>& lines,
          const Table& table, const json& doc) {
  switch (cfg.output) {
    case OutputFormat::text:
      for (const auto& line : lines) out << line << '\n';
      break;
    case OutputFormat::csv:
      write_csv(out, table);
      break;
    case OutputFormat::markdown:
      write_markdown(out, table);
      break;
    case OutputFormat::json:
      out << doc.dump(2) << '\n';
      break;
  }
}

int bound_like(const AnalysisConfig& cfg, std::ostream& out) {
  for (const auto& p : cfg.params) {
    if (p.ranged()) throw InputError("--" + p.flag + ": ranges are only accepted by 'table'");
  }
  std::vector<double> values;
  for (const auto& p : cfg.params) values.push_back(p.min);
  const auto bf = compute_bound(cfg, values);

  bool recoded = false;
  const auto estimate = oriented_estimate(cfg, recoded);
  std::optional<EffectEstimate> adjusted;
  if (estimate) adjusted = adjust_estimate(*estimate, bf);

  const int prec = cfg.precision;
  std::vector<std::string> lines;
  lines.push_back("scenario: " + bf.scenario.name());
  std::string plist;
  for (const auto& [name, value] : named_values(bf.params)) {
    plist += (plist.empty() ? "" : ", ") + name + "=" + fixed(value, prec);
  }
  lines.push_back("parameters: " + plist);
  lines.push_back("bounding factor: " + fixed(bf.value, prec) +
                  (bf.approximate ? " (approximate)" : ""));
  if (estimate) {
    lines.push_back("estimate: " + fmt_estimate(*estimate, prec));
    lines.push_back("adjusted estimate: " + fmt_estimate(*adjusted, prec));
  }
  if (bf.approximate) lines.push_back(std::string("note: ") + kApproxNote);
  if (cfg.mixed_directionality) lines.push_back(std::string("note: ") + kMixedNote);
  if (recoded) lines.push_back(std::string("note: ") + kRecodedNote);

  Table table;
  table.header.push_back("scenario");
  std::vector<std::string> row{bf.scenario.name()};
  for (const auto& [name, value] : named_values(bf.params)) {
    table.header.push_back(name);
    row.push_back(fixed(value, prec));
  }
  table.header.insert(table.header.end(), {"bound", "approximate"});
  row.push_back(fixed(bf.value, prec));
  row.push_back(bf.approximate ? "true" : "false");
  if (estimate) {
    table.header.insert(table.header.end(),
                        {"est", "lo", "hi", "adjusted_est", "adjusted_lo", "adjusted_hi"});
    row.insert(row.end(), {fixed(estimate->point().value(), prec),
                           limit_cell(estimate->lower(), prec), upper_cell(estimate->upper(), prec),
                           fixed(adjusted->point().value(), prec),
                           limit_cell(adjusted->lower(), prec), upper_cell(adjusted->upper(), prec)});
  }
  table.rows.push_back(std::move(row));

  json doc;
  doc["scenario"] = bf.scenario.name();
  json inputs;
  inputs["parameters"] = params_json(bf.params);
  if (estimate) inputs["estimate"] = to_json(*estimate);
  if (recoded) inputs["recoded"] = true;
  if (cfg.mixed_directionality) inputs["mixed_directionality"] = true;
  doc["inputs"] = inputs;
  doc["bound"] = json{{"value", bf.value}, {"approximate", bf.approximate}};
  if (adjusted) doc["adjusted"] = to_json(*adjusted);

  emit(out, cfg, lines, table, doc);
  return kExitOk;
}

const char* limit_name(LimitChoice c) {
  switch (c) {
    case LimitChoice::point:
      return "point";
    case LimitChoice::lower:
      return "lower";
    case LimitChoice::upper:
      return "upper";
  }
  return "point";
}

double value_used(const EffectEstimate& e, LimitChoice c) {
  switch (c) {
    case LimitChoice::point:
      return e.point().value();
    case LimitChoice::lower:
      return e.lower()->value();
    case LimitChoice::upper:
      return e.upper()->is_unbounded() ? std::numeric_limits<double>::infinity()
                                       : e.upper()->ratio().value();
  }
  return e.point().value();
}

}  // namespace

int cmd_bound(const AnalysisConfig& config, std::ostream& out) { return bound_like(config, out); }

int cmd_adjust(const AnalysisConfig& config, std::ostream& out) {
  if (!config.estimate) throw InputError("adjust needs an estimate (--est, optionally --lo/--hi)");
  return bound_like(config, out);
}

int cmd_svalue(const AnalysisConfig& cfg, std::ostream& out) {
  if (!cfg.estimate) throw InputError("svalue needs an estimate (--est)");
  const auto& est = *cfg.estimate;
  const int prec = cfg.precision;

  std::vector<SummaryMeasure> measures;
  measures.push_back(summary_for(cfg.scenario, est, cfg.target, LimitChoice::point));
  if (auto limit = summary_for_null_side_limit(cfg.scenario, est, cfg.target)) {
    measures.push_back(*limit);
  }

  std::string applies;
  for (const auto& f : parameter_flags(cfg.scenario, {})) {
    std::string name = f;
    std::replace(name.begin(), name.end(), '-', '_');
    applies += (applies.empty() ? "" : " = ") + name;
  }

  std::vector<std::string> lines;
  lines.push_back("scenario: " + cfg.scenario.name());
  lines.push_back("estimate: " + fmt_estimate(est, prec));
  lines.push_back("target: " + (cfg.target ? fixed(cfg.target->value(), prec) : "null (1)"));
  lines.push_back("parameters: " + applies);
  for (const auto& m : measures) {
    std::string label = m.applied_to == LimitChoice::point ? "point" : std::string(limit_name(m.applied_to)) + " limit";
    std::string line = "summary (" + label + "): " + fixed(m.value, prec);
    if (m.interval_covers_target) {
      line += " (interval already includes the target)";
    } else {
      line += " (relative bias " + fixed(m.input_rr, prec) + (m.recoded ? ", recoded" : "") + ")";
    }
    lines.push_back(line);
  }
  if (std::any_of(measures.begin(), measures.end(), [](const auto& m) { return m.recoded; })) {
    lines.push_back(
        "note: recoded means the exposure coding is reversed, so the A=1 parameters refer to "
        "the original reference level");
  }
  if (cfg.mixed_directionality) lines.push_back(std::string("note: ") + kMixedNote);

  Table table;
  table.header = {"scenario", "applied_to", "value",   "target",
                  "relative_bias", "recoded", "summary", "interval_covers_target"};
  json summaries = json::array();
  for (const auto& m : measures) {
    const double used = value_used(est, m.applied_to);
    table.rows.push_back({cfg.scenario.name(), limit_name(m.applied_to), fixed(used, prec),
                          cfg.target ? fixed(cfg.target->value(), prec) : "1",
                          m.interval_covers_target ? "" : fixed(m.input_rr, prec),
                          m.recoded ? "true" : "false", fixed(m.value, prec),
                          m.interval_covers_target ? "true" : "false"});
    json j;
    j["applied_to"] = limit_name(m.applied_to);
    j["value_used"] = json_number(used);
    if (!m.interval_covers_target) j["relative_bias"] = m.input_rr;
    j["recoded"] = m.recoded;
    j["value"] = m.value;
    if (m.interval_covers_target) j["interval_covers_target"] = true;
    summaries.push_back(j);
  }

  json doc;
  doc["scenario"] = cfg.scenario.name();
  json inputs;
  inputs["estimate"] = to_json(est);
  inputs["target"] = cfg.target ? json(cfg.target->value()) : json(1.0);
  if (cfg.mixed_directionality) inputs["mixed_directionality"] = true;
  doc["inputs"] = inputs;
  doc["summary"] = summaries;

  emit(out, cfg, lines, table, doc);
  return kExitOk;
}

int cmd_table(const AnalysisConfig& cfg, std::ostream& out) {
  if (std::none_of(cfg.params.begin(), cfg.params.end(), [](const auto& p) { return p.ranged(); })) {
    throw InputError("table needs at least one ranged parameter (min:max:steps)");
  }
  bool recoded = false;
  const auto estimate = oriented_estimate(cfg, recoded);
  const int prec = cfg.precision;
  const bool selected = cfg.scenario.kind == ScenarioKind::selected_population;

  std::vector<std::vector<double>> axes;
  for (const auto& p : cfg.params) axes.push_back(p.values());

  Table table;
  for (const auto& p : cfg.params) {
    std::string name = p.flag;
    std::replace(name.begin(), name.end(), '-', '_');
    table.header.push_back(name);
  }
  table.header.push_back("bound");
  if (selected) table.header.push_back("approximate");
  if (estimate) table.header.insert(table.header.end(), {"adjusted_est", "adjusted_lo", "adjusted_hi"});

  json rows = json::array();
  // Odometer over the grid; the first parameter varies slowest.
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    std::vector<double> values;
    for (std::size_t i = 0; i < axes.size(); ++i) values.push_back(axes[i][idx[i]]);
    const auto bf = compute_bound(cfg, values);

    std::vector<std::string> row;
    for (double v : values) row.push_back(fixed(v, prec));
    row.push_back(fixed(bf.value, prec));
    if (selected) row.push_back(bf.approximate ? "true" : "false");
    json j;
    j["parameters"] = params_json(bf.params);
    j["value"] = bf.value;
    if (selected) j["approximate"] = bf.approximate;
    if (estimate) {
      const auto adj = adjust_estimate(*estimate, bf);
      row.insert(row.end(), {fixed(adj.point().value(), prec), limit_cell(adj.lower(), prec),
                             upper_cell(adj.upper(), prec)});
      j["adjusted"] = to_json(adj);
    }
    table.rows.push_back(std::move(row));
    rows.push_back(std::move(j));

    bool wrapped = true;
    for (std::size_t d = axes.size(); d-- > 0;) {
      if (++idx[d] < axes[d].size()) {
        wrapped = false;
        break;
      }
      idx[d] = 0;
    }
    if (wrapped) break;
  }

  std::vector<std::string> lines;
  if (cfg.output == OutputFormat::text) {
    std::ostringstream os;
    write_aligned(os, table);
    std::istringstream is(os.str());
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    if (cfg.mixed_directionality) lines.push_back(std::string("note: ") + kMixedNote);
    if (recoded) lines.push_back(std::string("note: ") + kRecodedNote);
  }

  json doc;
  doc["scenario"] = cfg.scenario.name();
  json inputs;
  json ranges = json::object();
  for (const auto& p : cfg.params) {
    std::string name = p.flag;
    std::replace(name.begin(), name.end(), '-', '_');
    ranges[name] = p.ranged() ? json{{"min", p.min}, {"max", p.max}, {"steps", p.steps}}
                              : json(p.min);
  }
  inputs["parameters"] = ranges;
  if (estimate) inputs["estimate"] = to_json(*estimate);
  if (recoded) inputs["recoded"] = true;
  if (cfg.mixed_directionality) inputs["mixed_directionality"] = true;
  doc["inputs"] = inputs;
  doc["bound"] = rows;

  emit(out, cfg, lines, table, doc);
  return kExitOk;
}

int cmd_verify(const AnalysisConfig& cfg, std::ostream& out) {
  OracleReport report;
  try {
    report = cfg.mode == VerifyMode::sample
                 ? run_verification(cfg.k, cfg.scenario, cfg.n, cfg.seed, cfg.threads)
                 : tightness_search(cfg.k, cfg.scenario, cfg.n, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const int prec = cfg.precision;
  const char* mode = cfg.mode == VerifyMode::sample ? "sample" : "search";

  std::vector<std::string> lines{
      "scenario: " + report.scenario.name(),
      "k: " + std::to_string(report.k),
      std::string("mode: ") + mode,
      "samples: " + std::to_string(report.samples),
      "skipped: " + std::to_string(report.skipped),
      "violations: " + std::to_string(report.violations),
      "max bias/bound: " + fixed(report.max_bias_over_bound_ratio, prec),
      "seed: " + std::to_string(report.seed),
  };

  Table table;
  table.header = {"scenario", "k", "mode", "samples", "skipped", "violations",
                  "max_bias_over_bound", "seed"};
  table.rows.push_back({report.scenario.name(), std::to_string(report.k), mode,
                        std::to_string(report.samples), std::to_string(report.skipped),
                        std::to_string(report.violations),
                        fixed(report.max_bias_over_bound_ratio, prec),
                        std::to_string(report.seed)});

  json doc;
  doc["scenario"] = report.scenario.name();
  doc["inputs"] = json{{"k", report.k}, {"mode", mode}, {"n", cfg.n}, {"seed", report.seed}};
  json r;
  r["samples"] = report.samples;
  r["skipped"] = report.skipped;
  r["violations"] = report.violations;
  r["max_bias_over_bound_ratio"] = report.max_bias_over_bound_ratio;
  r["seed"] = report.seed;
  if (report.worst_case) r["worst_case"] = to_json(*report.worst_case);
  doc["report"] = r;

  emit(out, cfg, lines, table, doc);
  return report.violations == 0 ? kExitOk : kExitVerificationFailure;
}

}  // namespace selbias::cli
