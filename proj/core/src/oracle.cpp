#include "selbias/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace selbias {
namespace {

struct StratumMargins {
  double exposure = 0.0;       // P(A=a)
  double selected = 0.0;       // P(A=a, S=1)
  double unselected = 0.0;     // P(A=a, S=0)
  double risk_selected = 0.0;  // P(Y=1 | A=a, S=1)
  double risk_unselected = 0.0;
};

StratumMargins margins(const JointDistribution& d, int a) {
  StratumMargins m;
  double y_sel = 0.0;
  double y_unsel = 0.0;
  for (std::size_t u = 0; u < d.categories(); ++u) {
    const double p = d.p_au(a, u);
    const double s = d.p_select(a, u);
    const double y = d.p_outcome(a, u);
    m.exposure += p;
    m.selected += p * s;
    m.unselected += p * (1.0 - s);
    y_sel += p * s * y;
    y_unsel += p * (1.0 - s) * y;
  }
  m.risk_selected = y_sel / m.selected;
  m.risk_unselected = y_unsel / m.unselected;
  return m;
}

// sum_s { sum_u P(Y=1|a,s,u) P(u|a,s) } P(s|a), term by term.
double standardized_risk(const JointDistribution& d, int a) {
  const auto m = margins(d, a);
  double inner_sel = 0.0;
  double inner_unsel = 0.0;
  for (std::size_t u = 0; u < d.categories(); ++u) {
    const double p = d.p_au(a, u);
    const double s = d.p_select(a, u);
    const double y = d.p_outcome(a, u);  // P(Y=1|a,s,u) does not depend on s
    inner_sel += y * (p * s / m.selected);
    inner_unsel += y * (p * (1.0 - s) / m.unselected);
  }
  return inner_sel * (m.selected / m.exposure) + inner_unsel * (m.unselected / m.exposure);
}

double outcome_spread(const JointDistribution& d, int a) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t u = 0; u < d.categories(); ++u) {
    lo = std::min(lo, d.p_outcome(a, u));
    hi = std::max(hi, d.p_outcome(a, u));
  }
  return std::max(1.0, hi / lo);
}

// max_u P(u | a, S=numer) / P(u | a, S=denom), numer/denom in {1, 0}.
double selection_shift(const JointDistribution& d, int a, bool selected_over_unselected) {
  const auto m = margins(d, a);
  double best = 0.0;
  for (std::size_t u = 0; u < d.categories(); ++u) {
    const double p = d.p_au(a, u);
    const double s = d.p_select(a, u);
    const double given_sel = p * s / m.selected;
    const double given_unsel = p * (1.0 - s) / m.unselected;
    best = std::max(best, selected_over_unselected ? given_sel / given_unsel
                                                   : given_unsel / given_sel);
  }
  // At least one level has ratio >= 1 exactly; rounding can land an ulp under.
  return std::max(1.0, best);
}

// max_u P(u | A=1, S=1) / P(u | A=0, S=1).
double induced_exposure_association(const JointDistribution& d) {
  const auto m1 = margins(d, 1);
  const auto m0 = margins(d, 0);
  double best = 0.0;
  for (std::size_t u = 0; u < d.categories(); ++u) {
    const double exposed = d.p_au(1, u) * d.p_select(1, u) / m1.selected;
    const double unexposed = d.p_au(0, u) * d.p_select(0, u) / m0.selected;
    best = std::max(best, exposed / unexposed);
  }
  return std::max(1.0, best);
}

double true_rr_for(const JointDistribution& d, const Scenario& scenario) {
  return scenario.kind == ScenarioKind::selected_population ? true_rr_selected(d).value()
                                                            : true_rr_total(d).value();
}

bool precondition_met(const JointDistribution& d, const Scenario& scenario) {
  if (!scenario.is_directional()) return true;
  const auto r = selection_outcome_ratios(d);
  return scenario.direction == Direction::increased ? (r.exposed > 1.0 && r.unexposed > 1.0)
                                                    : (r.exposed < 1.0 && r.unexposed < 1.0);
}

void record(OracleReport& report, const JointDistribution& d, const Verification& v) {
  ++report.samples;
  if (v.skipped) {
    ++report.skipped;
    return;
  }
  if (!v.holds) ++report.violations;
  const double ratio = v.bias / v.bound;
  if (ratio > report.max_bias_over_bound_ratio) {
    report.max_bias_over_bound_ratio = ratio;
    report.worst_case = d;
  }
}

OracleReport empty_report(std::size_t k, const Scenario& scenario, std::uint64_t seed) {
  OracleReport r;
  r.k = k;
  r.scenario = scenario;
  r.seed = seed;
  return r;
}

}  // namespace

RiskRatio observed_rr(const JointDistribution& d) {
  return RiskRatio{margins(d, 1).risk_selected / margins(d, 0).risk_selected};
}

RiskRatio true_rr_total(const JointDistribution& d) {
  return RiskRatio{standardized_risk(d, 1) / standardized_risk(d, 0)};
}

RiskRatio true_rr_total_direct(const JointDistribution& d) {
  double risk[2] = {0.0, 0.0};
  for (int a = 0; a < 2; ++a) {
    double pa = 0.0;
    double py = 0.0;
    for (std::size_t u = 0; u < d.categories(); ++u) {
      pa += d.p_au(a, u);
      py += d.p_au(a, u) * d.p_outcome(a, u);
    }
    risk[a] = py / pa;
  }
  return RiskRatio{risk[1] / risk[0]};
}

RiskRatio true_rr_selected(const JointDistribution& d) {
  const std::size_t k = d.categories();
  std::vector<double> u_given_selected(k, 0.0);
  double selected = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (std::size_t u = 0; u < k; ++u) {
      const double w = d.p_au(a, u) * d.p_select(a, u);
      u_given_selected[u] += w;
      selected += w;
    }
  }
  double risk[2] = {0.0, 0.0};
  for (int a = 0; a < 2; ++a) {
    for (std::size_t u = 0; u < k; ++u) {
      risk[a] += d.p_outcome(a, u) * (u_given_selected[u] / selected);
    }
  }
  return RiskRatio{risk[1] / risk[0]};
}

SelectionOutcomeRatios selection_outcome_ratios(const JointDistribution& d) {
  const auto m1 = margins(d, 1);
  const auto m0 = margins(d, 0);
  return {m1.risk_selected / m1.risk_unselected, m0.risk_selected / m0.risk_unselected};
}

ScenarioParams realized_params(const JointDistribution& d, const Scenario& scenario) {
  const int stratum = scenario.direction == Direction::increased ? 1 : 0;
  switch (scenario.kind) {
    case ScenarioKind::general:
      return GeneralParams{outcome_spread(d, 1), selection_shift(d, 1, true),
                           outcome_spread(d, 0), selection_shift(d, 0, false)};
    case ScenarioKind::s_equals_u:
      return SEqualsUParams{outcome_spread(d, 1), outcome_spread(d, 0)};
    case ScenarioKind::directional:
      return DirectionalParams{scenario.direction, outcome_spread(d, stratum),
                               selection_shift(d, stratum, stratum == 1)};
    case ScenarioKind::s_equals_u_directional:
      return SEqualsUDirectionalParams{scenario.direction, outcome_spread(d, stratum)};
    case ScenarioKind::selected_population:
      return SelectedPopulationParams{std::max(outcome_spread(d, 1), outcome_spread(d, 0)),
                                      Association::exact_au, induced_exposure_association(d)};
  }
  throw std::logic_error("unhandled scenario");
}

Verification verify_bound(const JointDistribution& d, const Scenario& scenario) {
  Verification v;
  const double raw = observed_rr(d).value() / true_rr_for(d, scenario);
  const JointDistribution oriented = raw < 1.0 ? d.with_exposure_recoded() : d;
  v.recoded = raw < 1.0;
  if (!precondition_met(oriented, scenario)) {
    v.skipped = true;
    return v;
  }
  v.bias = v.recoded ? 1.0 / raw : raw;
  v.bound = bounding_factor(realized_params(oriented, scenario)).value;
  v.holds = v.bias <= v.bound * (1.0 + kViolationTolerance);
  return v;
}

SelectionStructure structure_for(const Scenario& scenario) noexcept {
  return (scenario.kind == ScenarioKind::s_equals_u ||
          scenario.kind == ScenarioKind::s_equals_u_directional)
             ? SelectionStructure::s_equals_u
             : SelectionStructure::free;
}

OracleReport run_verification(std::size_t k, const Scenario& scenario, std::size_t samples,
                              std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  const auto structure = structure_for(scenario);
  if (structure == SelectionStructure::s_equals_u && k != 2) {
    throw std::invalid_argument("S = U scenarios are verified with binary U (k = 2)");
  }
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(
                                                 samples, 256)));

  std::vector<OracleReport> partial(threads, empty_report(k, scenario, seed));
  auto work = [&](unsigned t) {
    const std::size_t begin = samples * t / threads;
    const std::size_t end = samples * (t + 1) / threads;
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng(seed, i);
      const auto d = sample_joint(k, rng, structure);
      record(partial[t], d, verify_bound(d, scenario));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  // Chunks cover increasing index ranges; a strict comparison keeps the
  // lowest-index worst case regardless of how the range was split.
  OracleReport merged = empty_report(k, scenario, seed);
  for (auto& p : partial) {
    merged.samples += p.samples;
    merged.skipped += p.skipped;
    merged.violations += p.violations;
    if (p.max_bias_over_bound_ratio > merged.max_bias_over_bound_ratio) {
      merged.max_bias_over_bound_ratio = p.max_bias_over_bound_ratio;
      merged.worst_case = std::move(p.worst_case);
    }
  }
  return merged;
}

namespace {

constexpr double kMaxLogit = 20.0;  // sigmoid(20) ~ 1 - 2e-9, inside the floor
constexpr double kMaxLogWeight = 40.0;

double logit(double p) { return std::log(p / (1.0 - p)); }

double sigmoid_clamped(double x) {
  const double p = 1.0 / (1.0 + std::exp(-std::clamp(x, -kMaxLogit, kMaxLogit)));
  return std::clamp(p, kPositivityFloor, 1.0 - kPositivityFloor);
}

// Unconstrained coordinates: [log P(a,u) | logit P(S|a,u) | logit P(Y|a,u)].
struct SearchPoint {
  std::vector<double> x;
};

SearchPoint to_point(const JointDistribution& d) {
  SearchPoint p;
  for (double w : d.p_au_table()) p.x.push_back(std::log(w));
  for (double s : d.p_select_table()) p.x.push_back(logit(s));
  for (double y : d.p_outcome_table()) p.x.push_back(logit(y));
  return p;
}

JointDistribution to_distribution(std::size_t k, const SearchPoint& p,
                                  std::span<const double> fixed_select) {
  const std::size_t n = 2 * k;
  const double top = *std::max_element(p.x.begin(), p.x.begin() + n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = std::exp(std::max(p.x[i] - top, -kMaxLogWeight));
  }
  std::vector<double> select(n);
  std::vector<double> outcome(n);
  for (std::size_t i = 0; i < n; ++i) {
    select[i] = fixed_select.empty() ? sigmoid_clamped(p.x[n + i]) : fixed_select[i];
    outcome[i] = sigmoid_clamped(p.x[2 * n + i]);
  }
  return JointDistribution{k, weights_to_table(weights), std::move(select), std::move(outcome)};
}

constexpr std::uint64_t kMoveStreamOffset = std::uint64_t{1} << 40;
constexpr std::size_t kIterationsPerRestart = 10'000;
constexpr std::size_t kMaxRestarts = 32;
constexpr std::size_t kMaxStartDraws = 1'000;

}  // namespace

OracleReport tightness_search(std::size_t k, const Scenario& scenario, std::size_t budget,
                              std::uint64_t seed) {
  if (budget == 0) throw std::invalid_argument("search budget must be at least 1");
  const auto structure = structure_for(scenario);
  if (structure == SelectionStructure::s_equals_u && k != 2) {
    throw std::invalid_argument("S = U scenarios are searched with binary U (k = 2)");
  }
  OracleReport report = empty_report(k, scenario, seed);
  const std::size_t restarts =
      std::clamp<std::size_t>(budget / kIterationsPerRestart, 1, kMaxRestarts);
  const std::size_t n = 2 * k;

  std::size_t used = 0;
  for (std::size_t r = 0; r < restarts && used < budget; ++r) {
    const std::size_t quota = (budget - used) / (restarts - r);
    const std::size_t stop = used + quota;

    // Starting point: the first draw that meets the scenario's precondition.
    RandomStream start_rng(seed, r);
    std::optional<JointDistribution> start;
    double current = -1.0;
    for (std::size_t draw = 0; draw < kMaxStartDraws && used < stop; ++draw) {
      auto d = sample_joint(k, start_rng, structure);
      const auto v = verify_bound(d, scenario);
      record(report, d, v);
      ++used;
      if (!v.skipped) {
        current = v.bias / v.bound;
        start = std::move(d);
        break;
      }
    }
    if (!start) continue;

    std::vector<double> fixed_select;
    if (structure == SelectionStructure::s_equals_u) {
      fixed_select.assign(start->p_select_table().begin(), start->p_select_table().end());
    }
    // Selection logits stay put when selection is structurally fixed.
    std::vector<std::size_t> free_coords;
    for (std::size_t i = 0; i < 3 * n; ++i) {
      if (fixed_select.empty() || i < n || i >= 2 * n) free_coords.push_back(i);
    }

    SearchPoint point = to_point(*start);
    RandomStream move_rng(seed, kMoveStreamOffset + r);
    double step = 1.0;
    while (used < stop) {
      SearchPoint trial = point;
      if (move_rng.uniform() < 0.75) {
        const auto j = free_coords[move_rng.below(free_coords.size())];
        trial.x[j] += step * move_rng.normal();
      } else {
        const double scale = step / std::sqrt(static_cast<double>(free_coords.size()));
        for (auto j : free_coords) trial.x[j] += scale * move_rng.normal();
      }
      for (std::size_t i = n; i < 3 * n; ++i) {
        trial.x[i] = std::clamp(trial.x[i], -kMaxLogit, kMaxLogit);
      }
      auto d = to_distribution(k, trial, fixed_select);
      const auto v = verify_bound(d, scenario);
      record(report, d, v);
      ++used;

      if (!v.skipped && v.bias / v.bound >= current) {
        current = v.bias / v.bound;
        point = std::move(trial);
        step = std::min(step * 1.5, 16.0);
      } else {
        step *= 0.95;
        if (step < 1e-3) step = 1.0;
      }
    }
  }
  return report;
}

}  // namespace selbias
