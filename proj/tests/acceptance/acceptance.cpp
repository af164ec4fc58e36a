// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli/cli.hpp"
#include "selbias/bounds.hpp"
#include "selbias/oracle.hpp"
#include "selbias/random.hpp"
#include "selbias/summaries.hpp"
#include "support/flat_enumeration.hpp"

using namespace selbias;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within(double value, double expected, double tol) { return std::abs(value - expected) <= tol; }

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

constexpr std::uint64_t kSeed = 20240607;
constexpr std::size_t kOracleSamples = 100'000;

Outcome zika_bound() {
  const auto bf = bounding_factor(GeneralParams{2.0, 1.7, 2.0, 1.5});
  const EffectEstimate est(RiskRatio{73.1}, RiskRatio{13.0}, UpperLimit::unbounded(),
                           Scale::odds_ratio_approx);
  const auto adj = adjust_estimate(est, bf);
  const bool ok = within(bf.value, 1.51, 0.005) && within(adj.point().value(), 48.4, 0.05) &&
                  adj.lower() && within(adj.lower()->value(), 8.6, 0.05) && adj.upper() &&
                  adj.upper()->is_unbounded();
  return {ok, fmt("bound %.6f, adjusted %.4f [%.4f, inf]", bf.value, adj.point().value(),
                  adj.lower() ? adj.lower()->value() : NAN)};
}

Outcome zika_summaries() {
  const double a = summary_general(73.1);
  const double b = summary_general(13.0);
  const double c = summary_general(3.0);
  return {within(a, 16.6, 0.05) && within(b, 6.7, 0.05) && within(c, 2.9, 0.05),
          fmt("%.5f, %.5f, %.5f", a, b, c)};
}

Outcome obesity_summaries() {
  const double a = summary_directional(1.50);
  const double b = summary_directional(1.22);
  return {within(a, 2.37, 0.005) && within(b, 1.74, 0.005), fmt("%.5f, %.5f", a, b)};
}

Outcome endometrial() {
  const auto rb = relative_bias(RiskRatio{2.30}, RiskRatio{11.98});
  const double s =
      summary_value(Scenario{ScenarioKind::s_equals_u_directional, Direction::increased},
                    rb.ratio);
  return {within(rb.ratio, 5.2, 0.05) && rb.recoded && s == rb.ratio,
          fmt("relative bias %.5f, recoded %s, summary %.5f", rb.ratio,
              rb.recoded ? "true" : "false", s)};
}

ScenarioParams all_equal(const Scenario& sc, double v) {
  switch (sc.kind) {
    case ScenarioKind::general:
      return GeneralParams{v, v, v, v};
    case ScenarioKind::s_equals_u:
      return SEqualsUParams{v, v};
    case ScenarioKind::directional:
      return DirectionalParams{sc.direction, v, v};
    case ScenarioKind::s_equals_u_directional:
      return SEqualsUDirectionalParams{sc.direction, v};
    case ScenarioKind::selected_population:
      return SelectedPopulationParams{v, Association::exact_au, v};
  }
  return GeneralParams{};
}

Outcome round_trip() {
  const auto t0 = Clock::now();
  RandomStream rng(kSeed, 0);
  double worst = 0.0;
  std::size_t checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double rr = 1.0 + 99.0 * rng.uniform();
    for (const auto& sc : all_scenarios()) {
      const double s = summary_value(sc, rr);
      const double back = bounding_factor(all_equal(sc, s)).value;
      worst = std::max(worst, std::abs(back - rr) / rr);
      ++checked;
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-10 && secs < 1.0,
          fmt("%zu round trips, max relative error %.3g, %.3f s", checked, worst, secs)};
}

Outcome oracle_non_violation() {
  const auto t0 = Clock::now();
  const unsigned threads = workers();
  std::string detail;
  bool ok = true;
  auto check = [&](std::size_t k, const Scenario& sc) {
    const auto rep = run_verification(k, sc, kOracleSamples, kSeed, threads);
    const std::size_t qualifying = rep.samples - rep.skipped;
    ok = ok && rep.violations == 0 && qualifying > 0;
    detail += fmt("%s k=%zu: %zu/%zu checked, %zu violations, max %.6f; ", sc.name().c_str(), k,
                  qualifying, rep.samples, rep.violations, rep.max_bias_over_bound_ratio);
  };
  for (std::size_t k : {2, 3, 4}) check(k, Scenario{ScenarioKind::general});
  check(2, Scenario{ScenarioKind::selected_population});
  check(2, Scenario{ScenarioKind::directional, Direction::increased});
  check(2, Scenario{ScenarioKind::directional, Direction::decreased});
  const double secs = seconds_since(t0);
  ok = ok && secs < 60.0;
  return {ok, detail + fmt("%.1f s on %u threads", secs, threads)};
}

Outcome oracle_self_consistency() {
  std::size_t laws = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  auto agree = [&](double a, double b) {
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
    return rel_close(a, b, 1e-12);
  };
  for (std::size_t k : {2, 3, 4}) {
    for (std::size_t i = 0; i < kOracleSamples; ++i) {
      RandomStream rng(kSeed, i);
      const auto d = sample_joint(k, rng, SelectionStructure::free);
      const testing::FlatTable flat(d);
      const auto ratios = selection_outcome_ratios(d);
      const auto gen = std::get<GeneralParams>(realized_params(d, Scenario{ScenarioKind::general}));
      const auto sel = std::get<SelectedPopulationParams>(
          realized_params(d, Scenario{ScenarioKind::selected_population}));
      bool ok = agree(flat.total(), 1.0);
      ok = agree(true_rr_total(d).value(), true_rr_total_direct(d).value()) && ok;
      ok = agree(true_rr_total(d).value(), flat.true_rr_total()) && ok;
      ok = agree(observed_rr(d).value(), flat.observed_rr()) && ok;
      ok = agree(true_rr_selected(d).value(), flat.true_rr_selected()) && ok;
      ok = agree(ratios.exposed, flat.risk_given_as(1, 1) / flat.risk_given_as(1, 0)) && ok;
      ok = agree(ratios.unexposed, flat.risk_given_as(0, 1) / flat.risk_given_as(0, 0)) && ok;
      ok = agree(gen.rr_uy_a1, flat.outcome_pair_max(1)) && ok;
      ok = agree(gen.rr_uy_a0, flat.outcome_pair_max(0)) && ok;
      ok = agree(gen.rr_su_a1, std::max(1.0, flat.selection_shift_max(1, 1, 0))) && ok;
      ok = agree(gen.rr_su_a0, std::max(1.0, flat.selection_shift_max(0, 0, 1))) && ok;
      ok = agree(sel.rr_association, std::max(1.0, flat.induced_association_max())) && ok;
      ++laws;
      if (!ok) ++failures;
    }
  }
  return {failures == 0,
          fmt("%zu laws (k = 2, 3, 4), %zu disagreements, max relative difference %.3g", laws,
              failures, worst)};
}

Outcome tightness() {
  std::string detail;
  bool ok = true;
  for (const auto dir : {Direction::increased, Direction::decreased}) {
    const Scenario sc{ScenarioKind::s_equals_u_directional, dir};
    const auto rep = tightness_search(2, sc, 100'000, kSeed);
    ok = ok && rep.violations == 0 && rep.max_bias_over_bound_ratio >= 0.95;
    detail += fmt("%s: max bias/bound %.6f, %zu violations; ", sc.name().c_str(),
                  rep.max_bias_over_bound_ratio, rep.violations);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome determinism() {
  auto invoke = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
  };
  std::size_t compared = 0;
  bool ok = true;
  for (const std::string scenario : {"general", "selected", "directional-increased"}) {
    const std::vector<std::string> base = {"verify", "--scenario", scenario, "--k", "3",
                                           "--n",    "20000",      "--seed", "7",   "--output",
                                           "json"};
    auto with_threads = [&](const char* t) {
      auto args = base;
      args.insert(args.end(), {"--threads", t});
      return invoke(args);
    };
    const auto reference = with_threads("1");
    ok = ok && reference.rfind("0\n", 0) == 0;
    for (const char* t : {"1", "2", "5", "8"}) {
      ok = ok && with_threads(t) == reference;
      ++compared;
    }
  }
  const auto search = [&] {
    return invoke({"verify", "--scenario", "s-equals-u-directional", "--mode", "search", "--n",
                   "5000", "--seed", "3"});
  };
  ok = ok && search() == search();
  ++compared;
  return {ok, fmt("%zu repeated runs byte-identical to their reference", compared)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Zika bounding factor and adjusted estimate", zika_bound},
      {"Zika summary measures", zika_summaries},
      {"obesity paradox summary measures", obesity_summaries},
      {"endometrial cancer relative bias", endometrial},
      {"summary/bound round trip", round_trip},
      {"oracle non-violation", oracle_non_violation},
      {"oracle self-consistency", oracle_self_consistency},
      {"tightness search", tightness},
      {"verify determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
