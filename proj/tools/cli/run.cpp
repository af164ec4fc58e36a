#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "cli/cli.hpp"

namespace selbias::cli {
namespace {

constexpr const char* kScenarioHelp =
    "Scenario (default general):\n"
    "  general                  only Y independent of S given {A, U}; needs\n"
    "                           --rr-uy-a1 --rr-su-a1 --rr-uy-a0 --rr-su-a0\n"
    "  s-equals-u               U is common to everyone selected; --rr-uy-a1 --rr-uy-a0\n"
    "  directional-increased    selection raises outcome risk in both exposure groups;\n"
    "                           --rr-uy-a1 --rr-su-a1\n"
    "  directional-decreased    selection lowers it in both; --rr-uy-a0 --rr-su-a0\n"
    "  s-equals-u-directional[-increased|-decreased]\n"
    "                           both of the above; --rr-uy-a1 (or --rr-uy-a0)\n"
    "  selected                 target is the causal RR among the selected;\n"
    "                           --rr-uy-s1 and one of --rr-au-s1 | --approx-su | --approx-sa\n"
    "  mixed                    risk raised in one group, lowered in the other; same as general";

struct Bindings {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App& app, const std::string& key, const std::string& help) {
    options.emplace_back(key, app.add_option("--" + key, values[key], help));
  }
  void overlay(RawInputs& raw) const {
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) raw[key] = values.at(key);
    }
  }
};

void add_params(CLI::App& app, Bindings& b) {
  b.add(app, "scenario", kScenarioHelp);
  b.add(app, "rr-uy-a1", "max/min outcome risk ratio across levels of U among the exposed");
  b.add(app, "rr-su-a1", "max factor by which selection raises a U level's prevalence, exposed");
  b.add(app, "rr-uy-a0", "max/min outcome risk ratio across levels of U among the unexposed");
  b.add(app, "rr-su-a0",
        "max factor by which non-selection raises a U level's prevalence, unexposed");
  b.add(app, "rr-uy-s1", "max outcome risk ratio across levels of U within S=1, either group");
  b.add(app, "rr-au-s1", "max exposure-U association induced within S=1 (exact bound)");
  b.add(app, "approx-su", "max selection risk ratio across levels of U (approximate bound)");
  b.add(app, "approx-sa", "max selection risk ratio across exposure levels (approximate bound)");
}

void add_estimate(CLI::App& app, Bindings& b) {
  b.add(app, "est", "point estimate (RR, or OR/HR read as RR)");
  b.add(app, "lo", "lower confidence limit");
  b.add(app, "hi", "upper confidence limit; 'inf' if unbounded");
  b.add(app, "scale", "rr, or, hr (metadata only)");
}

std::string parameter_message(const ParameterError& e) {
  std::string msg = e.what();
  const std::string prefix = "parameter " + e.parameter();
  if (msg.rfind(prefix, 0) == 0) msg = flag_for_parameter(e.parameter()) + msg.substr(prefix.size());
  return msg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selection-bias bounding factors, summary measures and bound verification",
               "selbias"};
  app.require_subcommand(1);
  app.fallthrough();

  Bindings global;
  std::string config_path;
  auto* config_opt =
      app.add_option("--config", config_path, "JSON file whose keys mirror the flag names");
  global.add(app, "output", "text, csv, markdown or json (default text)");
  global.add(app, "precision", "display decimals (default 2); json keeps full precision");

  Bindings bound_b, adjust_b, svalue_b, table_b, verify_b;
  auto* bound = app.add_subcommand("bound", "bounding factor, and the adjusted estimate if given");
  add_params(*bound, bound_b);
  add_estimate(*bound, bound_b);

  auto* adjust = app.add_subcommand("adjust", "divide an estimate and its CI by the bound");
  add_params(*adjust, adjust_b);
  add_estimate(*adjust, adjust_b);

  auto* svalue = app.add_subcommand(
      "svalue", "common parameter strength needed to move the estimate to the null or --true");
  svalue_b.add(*svalue, "scenario", kScenarioHelp);
  add_estimate(*svalue, svalue_b);
  svalue_b.add(*svalue, "true", "proposed true value (default: the null, 1)");

  auto* table = app.add_subcommand(
      "table", "grid of bounds over parameter ranges given as min:max:steps");
  add_params(*table, table_b);
  add_estimate(*table, table_b);

  auto* verify = app.add_subcommand("verify", "check the bound against exact random laws");
  verify_b.add(*verify, "scenario", kScenarioHelp);
  verify_b.add(*verify, "k", "number of levels of U, 2..8 (default 2)");
  verify_b.add(*verify, "n", "samples, or search iterations with --mode search (default 100000)");
  verify_b.add(*verify, "seed", "RNG seed (default 1)");
  verify_b.add(*verify, "threads", "worker threads, 0 for all cores (default 1)");
  verify_b.add(*verify, "mode", "sample (default) or search (hill-climb toward the bound)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    RawInputs raw;
    if (config_opt->count() > 0) raw = load_config_file(config_path);
    global.overlay(raw);

    if (bound->parsed()) {
      bound_b.overlay(raw);
      return cmd_bound(parse_analysis(raw, true), out);
    }
    if (adjust->parsed()) {
      adjust_b.overlay(raw);
      return cmd_adjust(parse_analysis(raw, true), out);
    }
    if (svalue->parsed()) {
      svalue_b.overlay(raw);
      return cmd_svalue(parse_analysis(raw, false), out);
    }
    if (table->parsed()) {
      table_b.overlay(raw);
      return cmd_table(parse_analysis(raw, true), out);
    }
    verify_b.overlay(raw);
    return cmd_verify(parse_analysis(raw, false), out);
  } catch (const ParameterError& e) {
    err << "error: " << parameter_message(e) << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace selbias::cli
