#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "selbias/bounds.hpp"

using namespace selbias;
using Catch::Approx;

TEST_CASE("joint_bound examples", "[bounds]") {
  CHECK(joint_bound(2.0, 1.7) == Approx(1.2593).epsilon(1e-4));
  CHECK(joint_bound(2.0, 2.0) == Approx(4.0 / 3.0).epsilon(1e-15));
  for (double a : {1.0, 1.3, 7.0, 250.0}) CHECK(joint_bound(a, 1.0) == 1.0);
}

TEST_CASE("joint_bound rejects parameters below one", "[bounds]") {
  CHECK_THROWS_AS(joint_bound(0.9, 2.0), ParameterError);
  CHECK_THROWS_AS(joint_bound(2.0, 0.5), ParameterError);
  try {
    joint_bound(2.0, 0.5);
  } catch (const ParameterError& e) {
    CHECK(e.parameter() == "b");
    CHECK(std::string(e.what()).find("reciprocal") != std::string::npos);
  }
}

TEST_CASE("joint_bound lies in [1, min(a, b)] and is symmetric on a dense grid", "[bounds][property]") {
  for (int i = 0; i <= 396; ++i) {
    const double a = 1.0 + 0.25 * i;
    for (int j = 0; j <= 396; ++j) {
      const double b = 1.0 + 0.25 * j;
      const double v = joint_bound(a, b);
      REQUIRE(v >= 1.0);
      REQUIRE(v <= std::min(a, b));
      REQUIRE(v == joint_bound(b, a));
    }
  }
}

TEST_CASE("bounding_factor examples", "[bounds]") {
  SECTION("Zika parameters") {
    const auto bf = bounding_factor(GeneralParams{2.0, 1.7, 2.0, 1.5});
    CHECK(bf.value == Approx(1.51).margin(0.005));
    CHECK(bf.scenario.kind == ScenarioKind::general);
    CHECK_FALSE(bf.approximate);
  }
  SECTION("no U association means no bias") {
    CHECK(bounding_factor(GeneralParams{1, 1, 1, 1}).value == 1.0);
  }
  SECTION("selected population, exact association") {
    const auto bf =
        bounding_factor(SelectedPopulationParams{2.37, Association::exact_au, 2.37});
    CHECK(bf.value == Approx(2.37 * 2.37 / 3.74).epsilon(1e-14));
    CHECK(bf.value == Approx(1.5018449).epsilon(1e-7));
    CHECK_FALSE(bf.approximate);
  }
  SECTION("substitute association is flagged approximate") {
    const auto su = bounding_factor(SelectedPopulationParams{3.0, Association::approx_su, 2.0});
    CHECK(su.value == Approx(1.5).epsilon(1e-15));
    CHECK(su.approximate);
    CHECK(bounding_factor(SelectedPopulationParams{3.0, Association::approx_sa, 2.0}).approximate);
  }
  SECTION("scenario dispatch") {
    CHECK(bounding_factor(SEqualsUParams{2.0, 3.0}).value == 6.0);
    CHECK(bounding_factor(DirectionalParams{Direction::decreased, 2.0, 2.0}).value ==
          Approx(4.0 / 3.0));
    CHECK(bounding_factor(SEqualsUDirectionalParams{Direction::increased, 5.2}).value == 5.2);
    CHECK(bounding_factor(DirectionalParams{Direction::decreased, 2.0, 2.0}).scenario ==
          Scenario{ScenarioKind::directional, Direction::decreased});
  }
}

TEST_CASE("bounding_factor names the offending parameter", "[bounds]") {
  try {
    bounding_factor(GeneralParams{2.0, 1.7, 0.8, 1.5});
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(e.parameter() == "rr_uy_a0");
    CHECK(e.value() == 0.8);
  }
  CHECK_THROWS_AS(bounding_factor(DirectionalParams{Direction::decreased, 2.0, 0.5}),
                  ParameterError);
}

namespace {

ScenarioParams random_params(ScenarioKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(1.0, 20.0);
  switch (kind) {
    case ScenarioKind::general:
      return GeneralParams{dist(rng), dist(rng), dist(rng), dist(rng)};
    case ScenarioKind::s_equals_u:
      return SEqualsUParams{dist(rng), dist(rng)};
    case ScenarioKind::directional:
      return DirectionalParams{Direction::increased, dist(rng), dist(rng)};
    case ScenarioKind::s_equals_u_directional:
      return SEqualsUDirectionalParams{Direction::increased, dist(rng)};
    case ScenarioKind::selected_population:
      return SelectedPopulationParams{dist(rng), Association::exact_au, dist(rng)};
  }
  return GeneralParams{};
}

// Increases the i-th named parameter by `delta`.
ScenarioParams bump(ScenarioParams p, std::size_t i, double delta) {
  std::visit(
      [&](auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, GeneralParams>) {
          double* f[] = {&q.rr_uy_a1, &q.rr_su_a1, &q.rr_uy_a0, &q.rr_su_a0};
          *f[i] += delta;
        } else if constexpr (std::is_same_v<T, SEqualsUParams>) {
          double* f[] = {&q.rr_uy_a1, &q.rr_uy_a0};
          *f[i] += delta;
        } else if constexpr (std::is_same_v<T, DirectionalParams>) {
          double* f[] = {&q.rr_uy, &q.rr_su};
          *f[i] += delta;
        } else if constexpr (std::is_same_v<T, SEqualsUDirectionalParams>) {
          q.rr_uy += delta;
        } else {
          double* f[] = {&q.rr_uy_s1, &q.rr_association};
          *f[i] += delta;
        }
      },
      p);
  return p;
}

}  // namespace

TEST_CASE("bounding_factor is nondecreasing in every parameter", "[bounds][property]") {
  std::mt19937_64 rng(20190401);
  std::uniform_real_distribution<double> step(0.0, 5.0);
  for (const auto kind : {ScenarioKind::general, ScenarioKind::s_equals_u,
                          ScenarioKind::directional, ScenarioKind::s_equals_u_directional,
                          ScenarioKind::selected_population}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const auto p = random_params(kind, rng);
      const std::size_t n = named_values(p).size();
      for (std::size_t i = 0; i < n; ++i) {
        const auto larger = bump(p, i, step(rng));
        REQUIRE(bounding_factor(larger).value >= bounding_factor(p).value);
      }
    }
  }
}

TEST_CASE("directional bound never exceeds the general bound", "[bounds][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1.0, 50.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const double uy = dist(rng);
    const double su = dist(rng);
    const double one_kernel =
        bounding_factor(DirectionalParams{Direction::increased, uy, su}).value;
    const double two_kernels = bounding_factor(GeneralParams{uy, su, dist(rng), dist(rng)}).value;
    REQUIRE(one_kernel <= two_kernels);
  }
}

TEST_CASE("a unit parameter collapses its kernel exactly", "[bounds][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(1.0, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = dist(rng);
    REQUIRE(joint_bound(x, 1.0) == 1.0);
    REQUIRE(joint_bound(1.0, x) == 1.0);
    const double y = dist(rng);
    REQUIRE(bounding_factor(GeneralParams{x, 1.0, 1.0, y}).value == 1.0);
  }
}

TEST_CASE("relative_bias orients toward the larger value", "[bounds]") {
  const auto endometrial = relative_bias(RiskRatio{2.30}, RiskRatio{11.98});
  CHECK(endometrial.ratio == Approx(5.209).margin(5e-4));
  CHECK(endometrial.recoded);

  const auto same = relative_bias(RiskRatio{1.7}, RiskRatio{1.7});
  CHECK(same.ratio == 1.0);
  CHECK_FALSE(same.recoded);

  const auto null_target = relative_bias(RiskRatio{4.0}, RiskRatio{1.0});
  CHECK(null_target.ratio == 4.0);
  CHECK_FALSE(null_target.recoded);
}

TEST_CASE("adjust_estimate divides every finite value", "[bounds]") {
  SECTION("Zika") {
    const EffectEstimate zika(RiskRatio{73.1}, RiskRatio{13.0}, UpperLimit::unbounded(),
                              Scale::odds_ratio_approx);
    const auto adj = adjust_estimate(zika, bounding_factor(GeneralParams{2.0, 1.7, 2.0, 1.5}));
    CHECK(adj.point().value() == Approx(48.4).margin(0.05));
    CHECK(adj.lower()->value() == Approx(8.6).margin(0.05));
    CHECK(adj.upper()->is_unbounded());
    CHECK(adj.scale() == Scale::odds_ratio_approx);
  }
  SECTION("identity bound") {
    const EffectEstimate e(RiskRatio{2.5}, RiskRatio{1.1}, UpperLimit::finite(RiskRatio{4.0}));
    CHECK(adjust_estimate(e, bounding_factor(GeneralParams{})) == e);
  }
  SECTION("elementwise") {
    const EffectEstimate e(RiskRatio{3.0}, RiskRatio{1.5}, UpperLimit::finite(RiskRatio{6.0}));
    const auto adj = adjust_estimate(e, bounding_factor(SEqualsUDirectionalParams{
                                            Direction::increased, 1.5}));
    CHECK(adj.point().value() == Approx(2.0));
    CHECK(adj.lower()->value() == Approx(1.0));
    CHECK(adj.upper()->ratio().value() == Approx(4.0));
  }
  SECTION("overshooting the null is reported, not truncated") {
    const EffectEstimate e(RiskRatio{1.2});
    const auto adj = adjust_estimate(e, bounding_factor(SEqualsUParams{2.0, 1.0}));
    CHECK(adj.point().value() == Approx(0.6));
  }
}

TEST_CASE("adjusting then re-multiplying recovers the estimate", "[bounds][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(1.0, 30.0);
  for (int trial = 0; trial < 5000; ++trial) {
    double v[3] = {dist(rng), dist(rng), dist(rng)};
    std::sort(std::begin(v), std::end(v));
    const EffectEstimate e(RiskRatio{v[1]}, RiskRatio{v[0]}, UpperLimit::finite(RiskRatio{v[2]}));
    const auto bf = bounding_factor(GeneralParams{dist(rng), dist(rng), dist(rng), dist(rng)});
    const auto adj = adjust_estimate(e, bf);
    REQUIRE(std::abs(adj.point().value() * bf.value / v[1] - 1.0) <= 1e-12);
    REQUIRE(std::abs(adj.lower()->value() * bf.value / v[0] - 1.0) <= 1e-12);
    REQUIRE(std::abs(adj.upper()->ratio().value() * bf.value / v[2] - 1.0) <= 1e-12);
  }
}
