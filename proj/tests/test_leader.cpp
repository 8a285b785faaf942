#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "coordsolve/errors.hpp"
#include "coordsolve/leader.hpp"
#include "support/corpus.hpp"

using namespace coord;
namespace ct = coord::testing;

namespace {

EquilibriumStructure canonical_structure() {
  return validate_multiplicity(find_fixed_points(
      ct::canonical_demand(), ct::canonical_cost(), 100000, 1e-10));
}

}  // namespace

TEST_CASE("leader profit under uniform costs") {
  const auto demand = ct::canonical_demand();
  const auto cost = CostDistribution::uniform(1.0);
  CHECK(leader_profit(demand, cost, 0.0, 0.5) == 0.0);
  // p * s_l - s_l^2 / 2 with the market price at the realized outcome.
  const double p = demand.price(0.6, 0.6);
  CHECK(leader_profit(demand, cost, 0.4, 0.6) ==
        doctest::Approx(p * 0.4 - 0.08).epsilon(1e-14));
}

TEST_CASE("committing the whole high equilibrium earns Pi(S_high)") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto st = canonical_structure();
  const double s_high = st.s_high.supply;
  // P(S_high, S_high) = G^{-1}(S_high) at the fixed point.
  CHECK(std::abs(leader_profit(demand, cost, s_high, s_high) -
                 whole_market_profit(cost, s_high)) < 1e-9);

  // Corner realization in the intermediate band: price below the marginal
  // cost, so the commitment earns less than its whole-market value.
  CHECK(leader_profit(demand, cost, 0.3, 0.3) <
        whole_market_profit(cost, 0.3));
  CHECK(whole_market_profit(cost, 0.3) < whole_market_profit(cost, s_high));
}

TEST_CASE("whole-market profit and slope, uniform closed forms") {
  const auto cost = CostDistribution::uniform(1.0);
  CHECK(whole_market_profit(cost, 0.0) == 0.0);
  CHECK(whole_market_profit(cost, 0.5) == 0.125);
  CHECK(whole_market_profit_slope(cost, 0.5) == 0.5);
  CHECK_THROWS_AS(whole_market_profit_slope(cost, 0.0), DomainError);
  CHECK_THROWS_AS(whole_market_profit_slope(cost, 1.0), DomainError);
}

TEST_CASE("Pi' = s / g(quantile) matches finite differences off knots") {
  const auto cost = ct::canonical_cost();
  ct::Rng01 rng(31);
  int checked = 0;
  while (checked < 100) {
    const double s = 0.02 + 0.96 * rng.next();
    if (cost.knot_distance(cost.quantile(s)) < 1e-3) continue;
    const double fd = ct::central_diff(
        [&](double x) { return whole_market_profit(cost, x); }, s);
    const double slope = whole_market_profit_slope(cost, s);
    CHECK(std::abs(fd - slope) < 1e-5);
    CHECK(slope > 0.0);
    ++checked;
  }
  // Exactly at a knot mass the density jumps and the slope is undefined.
  CHECK_THROWS_AS(whole_market_profit_slope(cost, 0.35), DomainError);
}

TEST_CASE("Pi is strictly increasing") {
  const auto cost = ct::canonical_cost();
  double prev = whole_market_profit(cost, 0.01);
  for (int i = 2; i <= 100; ++i) {
    const double cur = whole_market_profit(cost, i / 100.0);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("regime-III slope at S_high reduces to the network margin") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto st = canonical_structure();
  const double s = st.s_high.supply;
  const double margin = demand.dprice_dq(s, s) + demand.dprice_ds(s, s);
  // P = G^{-1} cancels at the fixed point, leaving margin * S_high.
  CHECK(std::abs(regime3_slope(demand, cost, s) - margin * s) < 1e-9);
  CHECK(regime3_slope(demand, cost, s) > 0.0);

  ct::Rng01 rng(77);
  for (int i = 0; i < 50; ++i) {
    const double x = s + (1.0 - s - 2e-4) * rng.next() + 1e-4;
    if (cost.knot_distance(demand.price(x, x)) < 1e-3) continue;
    if (cost.knot_distance(cost.quantile(x)) < 1e-3) continue;
    const double fd = ct::central_diff(
        [&](double y) { return regime3_profit(demand, cost, y); }, x);
    CHECK(std::abs(fd - regime3_slope(demand, cost, x)) < 1e-5);
  }
}

TEST_CASE("canonical monopoly search runs to the stock boundary") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto st = canonical_structure();
  const auto r3 = solve_regime3(demand, cost, st);
  CHECK(r3.s_l_mon == 1.0);
  CHECK(r3.boundary_hit);
  CHECK(r3.profit == doctest::Approx(0.9 - 0.42275).epsilon(1e-12));

  // Grid-scan oracle: the solver's maximum is at least the grid's best.
  double best = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double s = st.s_high.supply + (1.0 - st.s_high.supply) * i / 2000.0;
    best = std::max(best, regime3_profit(demand, cost, s));
  }
  CHECK(r3.profit >= best - 1e-6);
}

TEST_CASE("steep-tail scenario has an interior monopoly optimum") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::steep_tail_cost();
  const auto st = validate_multiplicity(
      find_fixed_points(demand, cost, 100000, 1e-10));
  const auto r3 = solve_regime3(demand, cost, st);
  CHECK(!r3.boundary_hit);
  REQUIRE(r3.foc_residual.has_value());
  CHECK(std::abs(*r3.foc_residual) <= 1e-6);
  // Closed form on the top cost segment: 4.5 s^2 - (2 + 400/3) s
  //   + (-0.6 + 0.97 * 400/3) = 0.
  const double a = 4.5, b = -(2.0 + 400.0 / 3.0),
               c = -0.6 + 0.97 * 400.0 / 3.0;
  const double s_exact = (-b - std::sqrt(b * b - 4 * a * c)) / (2 * a);
  CHECK(std::abs(r3.s_l_mon - s_exact) < 1e-8);
}

TEST_CASE("expansion condition with the specified closed form") {
  const auto demand = ct::canonical_demand();
  const auto st = canonical_structure();
  const auto cond = expansion_condition(demand, st);
  CHECK(cond.holds);
  REQUIRE(cond.specified_value.has_value());
  CHECK(std::abs(*cond.specified_value - 3.0 * st.s_high.supply) < 1e-12);
  CHECK(std::abs(cond.margin * 1.0 + 1.0 - *cond.specified_value) < 1e-12);

  // alpha = 1 reduces the margin to (gamma - 1) / beta at any supply.
  const auto lin_hold =
      DemandModel::specified_linear_network({1.0, 2.0, 1.2, 1.0});
  EquilibriumStructure hand{{0.2, Stability::Stable, 0.0},
                            {0.4, Stability::Unstable, 2.0},
                            {0.5, Stability::Stable, 0.0}};
  const auto c1 = expansion_condition(lin_hold, hand);
  CHECK(c1.margin == doctest::Approx((1.2 - 1.0) / 2.0).epsilon(1e-14));
  CHECK(c1.holds);
  const auto lin_fail =
      DemandModel::specified_linear_network({1.0, 2.0, 0.9, 1.0});
  const auto c2 = expansion_condition(lin_fail, hand);
  CHECK(!c2.holds);
  CHECK(c2.margin < 0.0);
}

TEST_CASE("solve picks regime III on the canonical scenario") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto st = canonical_structure();
  const auto sol = solve(demand, cost, st);
  CHECK(sol.s_l_star == 1.0);
  CHECK(sol.regime == Regime::III);
  CHECK(sol.total_supply == 1.0);
  CHECK(sol.boundary_hit);
  CHECK(sol.profit == doctest::Approx(0.47725).epsilon(1e-12));
  CHECK(sol.s_l_star >= st.s_high.supply);
}

TEST_CASE("corner-high scenarios settle at s_l = S_high = 1") {
  const auto demand = DemandModel::specified_linear_network({0.45, 1, 1.1, 2});
  const auto cost = CostDistribution::uniform(0.5);
  const auto st = validate_multiplicity(
      find_fixed_points(demand, cost, 100000, 1e-10));
  const auto sol = solve(demand, cost, st);
  CHECK(sol.s_l_star == 1.0);
  CHECK(sol.regime == Regime::II);
  // The realized corner price P(1,1) = 0.55 exceeds G^{-1}(1) = 0.5.
  CHECK(sol.profit == doctest::Approx(0.55 - 0.25).epsilon(1e-12));
  const auto cert = verify_dominance(demand, cost, st, sol, 500);
  CHECK(cert.worst_margin > 0.0);
}

TEST_CASE("dominance certificate on the canonical solution") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto st = canonical_structure();
  const auto sol = solve(demand, cost, st);
  const auto cert = verify_dominance(demand, cost, st, sol, 500);
  CHECK(cert.worst_margin > 0.0);
  CHECK(cert.deviation_grid.size() == 500);
  CHECK(cert.deviation_grid.front() == 0.0);
  CHECK(cert.deviation_grid.back() < st.s_unstable.supply);

  // A corrupted solution must fail the certificate.
  LeaderSolution corrupted = sol;
  corrupted.profit *= 0.5;
  CHECK_THROWS_AS(verify_dominance(demand, cost, st, corrupted, 500),
                  CertificateFailure);
}

TEST_CASE("capacity constraint: slack, regime-II band, ambiguous band") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto st = canonical_structure();
  const auto sol = solve(demand, cost, st);

  const auto slack = solve_with_capacity(demand, cost, st, 1.0);
  CHECK(slack.s_l_star == sol.s_l_star);
  CHECK(slack.profit == sol.profit);
  CHECK(!slack.optimistic_profit_at_k.has_value());

  const auto band = solve_with_capacity(demand, cost, st, 0.8);
  CHECK(band.s_l_star == 0.8);
  CHECK(band.total_supply == st.s_high.supply);
  CHECK(band.regime == Regime::II);
  const double expected = demand.price(st.s_high.supply, st.s_high.supply) *
                              0.8 -
                          cost.cumulative_cost(0.8);
  CHECK(band.profit == doctest::Approx(expected).epsilon(1e-12));

  // k inside (S_low, S_unstable): the worst case is the corner trap, so the
  // optimum retreats to S_low; the optimistic value at k is also reported.
  const auto tight = solve_with_capacity(demand, cost, st, 0.4);
  CHECK(tight.s_l_star == st.s_low.supply);
  CHECK(tight.profit ==
        doctest::Approx(leader_profit(demand, cost, st.s_low.supply,
                                      st.s_low.supply))
            .epsilon(1e-12));
  REQUIRE(tight.optimistic_profit_at_k.has_value());
  const double optimistic =
      demand.price(st.s_high.supply, st.s_high.supply) * 0.4 -
      cost.cumulative_cost(0.4);
  CHECK(*tight.optimistic_profit_at_k ==
        doctest::Approx(optimistic).epsilon(1e-12));

  CHECK_THROWS_AS(solve_with_capacity(demand, cost, st, 0.0), DomainError);
  CHECK_THROWS_AS(solve_with_capacity(demand, cost, st, 1.5), DomainError);
}

TEST_CASE("alternative technology: s_l = 0 reproduces the baseline exactly") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto base = find_fixed_points(demand, cost, 100000, 1e-10);
  const auto alt = alt_fixed_points(demand, cost, 0.0, 0.2, 100000, 1e-10);
  REQUIRE(alt.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(alt[i].supply == base[i].supply);
    CHECK(alt[i].kind == base[i].kind);
    CHECK(alt[i].slope == base[i].slope);
  }
}

TEST_CASE("alternative technology: shifted map and profits") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto points = alt_fixed_points(demand, cost, 0.3, 0.2, 100000, 1e-10);
  REQUIRE(!points.empty());
  for (const auto& p : points) {
    const double raw = cost.cdf(
        std::clamp(demand.price(p.supply, p.supply), 0.0, cost.c_bar()));
    CHECK(std::abs(p.supply - 0.3 - raw) <= 1e-9);
  }
  // Total supply may exceed the stock: the top point rides the clamp.
  CHECK(points.back().supply > 1.0);

  // A unit cost above every continuation price makes commitment worthless.
  double max_price = 0.0;
  for (const auto& p : points)
    max_price = std::max(max_price, demand.price(p.supply, p.supply));
  CHECK(alt_profit(demand, 0.3, points.front().supply, max_price + 0.1) <
        0.0);
  CHECK(alt_profit(demand, 0.0, points.front().supply, 0.05) == 0.0);

  CHECK_THROWS_AS(alt_fixed_points(demand, cost, 0.3, 0.0), DomainError);
  CHECK_THROWS_AS(alt_fixed_points(demand, cost, -0.1, 0.2), DomainError);
}

TEST_CASE("exploratory alt search is deterministic and self-consistent") {
  const auto demand = ct::canonical_demand();
  const auto cost = ct::canonical_cost();
  const auto a = explore_alt_commitment(demand, cost, 0.2, 50, 5000, 1e-9);
  const auto b = explore_alt_commitment(demand, cost, 0.2, 50, 5000, 1e-9);
  CHECK(a.s_l == b.s_l);
  CHECK(a.worst_profit == b.worst_profit);
  CHECK(a.worst_profit >= 0.0);  // s_l = 0 guarantees at least zero
}
