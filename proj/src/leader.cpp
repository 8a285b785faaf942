#include "coordsolve/leader.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coordsolve/errors.hpp"
#include "coordsolve/numeric.hpp"

namespace coord {

namespace {

constexpr double kBoundaryTol = 1e-9;

// Worst-case (dominance) evaluation of a commitment: minimum profit over
// the stable continuations, with the realization attaining it.
struct WorstCase {
  double profit;
  double continuation;
};

WorstCase worst_case_profit(const DemandModel& demand,
                            const CostDistribution& cost,
                            const EquilibriumStructure& structure,
                            double s_l) {
  const Correspondence corr = correspondence(structure, demand, cost, s_l);
  WorstCase worst{0.0, 0.0};
  bool first = true;
  for (const Outcome& o : corr.outcomes) {
    const double profit = leader_profit(demand, cost, s_l, o.supply);
    if (first || profit < worst.profit) {
      worst = {profit, o.supply};
      first = false;
    }
  }
  return worst;
}

}  // namespace

double leader_profit(const DemandModel& demand, const CostDistribution& cost,
                     double s_l, double s_star) {
  return demand.price(s_star, s_star) * s_l - cost.cumulative_cost(s_l);
}

double whole_market_profit(const CostDistribution& cost, double s) {
  return cost.quantile(s) * s - cost.cumulative_cost(s);
}

double whole_market_profit_slope(const CostDistribution& cost, double s) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("whole_market_profit_slope: mass outside (0, 1)");
  const double c = cost.quantile(s);
  if (cost.knot_distance(c) <= 1e-12 * cost.c_bar())
    throw DomainError(
        "whole_market_profit_slope: quantile sits on a cost-CDF kink");
  return s / cost.density(c);
}

double regime3_profit(const DemandModel& demand, const CostDistribution& cost,
                      double s_l) {
  return demand.price(s_l, s_l) * s_l - cost.cumulative_cost(s_l);
}

double regime3_slope(const DemandModel& demand, const CostDistribution& cost,
                     double s_l) {
  return demand.price(s_l, s_l) +
         (demand.dprice_dq(s_l, s_l) + demand.dprice_ds(s_l, s_l)) * s_l -
         cost.quantile(s_l);
}

Regime3Solution solve_regime3(const DemandModel& demand,
                              const CostDistribution& cost,
                              const EquilibriumStructure& structure) {
  const double lo = structure.s_high.supply;
  const double hi = 1.0;
  if (hi - lo <= kBoundaryTol)
    return {1.0, regime3_profit(demand, cost, 1.0), true, std::nullopt};

  const auto objective = [&](double s) {
    return regime3_profit(demand, cost, s);
  };

  constexpr int kGrid = 1000;
  int best = 0;
  double best_value = objective(lo);
  for (int i = 1; i <= kGrid; ++i) {
    const double s = lo + (hi - lo) * i / kGrid;
    const double v = objective(s);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double bra = lo + (hi - lo) * std::max(0, best - 1) / kGrid;
  const double brb = lo + (hi - lo) * std::min(kGrid, best + 1) / kGrid;
  double s_mon = numeric::golden_max(objective, bra, brb, 1e-12);

  Regime3Solution sol;
  sol.boundary_hit = (1.0 - s_mon <= kBoundaryTol);
  if (sol.boundary_hit) s_mon = 1.0;
  // Snap to the regime boundary as well so ties resolve deterministically.
  if (s_mon - lo <= kBoundaryTol) s_mon = lo;
  sol.s_l_mon = s_mon;
  sol.profit = objective(s_mon);
  if (!sol.boundary_hit && s_mon > lo)
    sol.foc_residual = regime3_slope(demand, cost, s_mon);
  return sol;
}

ExpansionCondition expansion_condition(const DemandModel& demand,
                                       const EquilibriumStructure& structure) {
  const double s = structure.s_high.supply;
  ExpansionCondition cond;
  cond.margin = demand.dprice_dq(s, s) + demand.dprice_ds(s, s);
  cond.holds = cond.margin > 0.0;
  if (const DemandParams* p = demand.specified_params()) {
    const double value = p->gamma * p->alpha * std::pow(s, p->alpha - 1.0);
    cond.specified_value = value;
    // margin * beta + 1 equals the closed-form threshold expression; the
    // two sign tests must agree.
    if ((value > 1.0) != cond.holds)
      throw InternalInconsistency(
          "expansion condition disagrees with its specified closed form");
  }
  return cond;
}

LeaderSolution solve(const DemandModel& demand, const CostDistribution& cost,
                     const EquilibriumStructure& structure) {
  const double s_high = structure.s_high.supply;
  // Regime II optimum: commit the whole high equilibrium. The continuation
  // price is the realized market price, which exceeds G^{-1}(1) when the
  // high point is a corner pinned at the top of the stock.
  const double regime2 = leader_profit(demand, cost, s_high, s_high);
  const Regime3Solution r3 = solve_regime3(demand, cost, structure);

  LeaderSolution sol;
  if (r3.profit > regime2 && r3.s_l_mon > s_high) {
    sol.s_l_star = r3.s_l_mon;
    sol.regime = Regime::III;
    sol.profit = r3.profit;
    sol.boundary_hit = r3.boundary_hit;
    sol.foc_residual = r3.foc_residual;
  } else {
    sol.s_l_star = s_high;
    sol.regime = Regime::II;
    sol.profit = regime2;
    sol.boundary_hit = (1.0 - s_high <= kBoundaryTol);
  }
  sol.total_supply = std::max(sol.s_l_star, s_high);
  return sol;
}

DominanceCertificate verify_dominance(const DemandModel& demand,
                                      const CostDistribution& cost,
                                      const EquilibriumStructure& structure,
                                      const LeaderSolution& solution,
                                      int grid_n) {
  if (grid_n < 1) throw DomainError("verify_dominance: grid_n must be >= 1");
  DominanceCertificate cert;
  cert.deviation_grid.reserve(grid_n);
  cert.worst_margin = std::numeric_limits<double>::infinity();
  cert.worst_s_l = 0.0;
  cert.worst_realization = 0.0;
  const double s_unstable = structure.s_unstable.supply;
  for (int i = 0; i < grid_n; ++i) {
    const double s_l = s_unstable * i / grid_n;
    cert.deviation_grid.push_back(s_l);
    const Correspondence corr = correspondence(structure, demand, cost, s_l);
    for (const Outcome& o : corr.outcomes) {
      const double margin =
          solution.profit - leader_profit(demand, cost, s_l, o.supply);
      if (margin < cert.worst_margin) {
        cert.worst_margin = margin;
        cert.worst_s_l = s_l;
        cert.worst_realization = o.supply;
      }
      if (margin <= 0.0) throw CertificateFailure(s_l, o.supply, margin);
    }
  }
  return cert;
}

CapacitySolution solve_with_capacity(const DemandModel& demand,
                                     const CostDistribution& cost,
                                     const EquilibriumStructure& structure,
                                     double k) {
  if (!(k > 0.0 && k <= 1.0))
    throw DomainError("solve_with_capacity: k outside (0, 1]");

  std::vector<double> candidates;
  constexpr int kGrid = 1000;
  candidates.reserve(kGrid + 6);
  for (int i = 0; i <= kGrid; ++i)
    candidates.push_back(k * i / kGrid);
  for (double s : {structure.s_low.supply, structure.s_unstable.supply,
                   structure.s_high.supply, k})
    if (s <= k) candidates.push_back(s);
  const LeaderSolution uncapped = solve(demand, cost, structure);
  if (uncapped.s_l_star <= k) candidates.push_back(uncapped.s_l_star);
  std::sort(candidates.begin(), candidates.end());

  bool first = true;
  CapacitySolution sol;
  for (double s_l : candidates) {
    const WorstCase wc = worst_case_profit(demand, cost, structure, s_l);
    if (first || wc.profit > sol.profit + 1e-12) {
      sol.s_l_star = s_l;
      sol.profit = wc.profit;
      sol.total_supply = wc.continuation;
      first = false;
    }
  }
  sol.regime = regime_of(structure, sol.s_l_star);
  if (structure.s_low.supply < k && k < structure.s_unstable.supply) {
    // The ambiguous band: report the optimistic continuation value at k
    // alongside the worst-case optimum.
    const Correspondence corr = correspondence(structure, demand, cost, k);
    double best = -std::numeric_limits<double>::infinity();
    for (const Outcome& o : corr.outcomes)
      best = std::max(best, leader_profit(demand, cost, k, o.supply));
    sol.optimistic_profit_at_k = best;
  }
  return sol;
}

std::vector<FixedPoint> alt_fixed_points(const DemandModel& demand,
                                         const CostDistribution& cost,
                                         double s_l, double c_l,
                                         long long grid_n, double tol) {
  if (!(c_l > 0.0)) throw DomainError("alt_fixed_points: c_l must be > 0");
  if (!(s_l >= 0.0)) throw DomainError("alt_fixed_points: s_l must be >= 0");
  return detail::scan_fixed_points(demand, cost, s_l, grid_n, tol);
}

double alt_profit(const DemandModel& demand, double s_l, double s_star,
                  double c_l) {
  return (demand.price(s_star, s_star) - c_l) * s_l;
}

AltExploration explore_alt_commitment(const DemandModel& demand,
                                      const CostDistribution& cost, double c_l,
                                      int commit_grid_n, long long fp_grid_n,
                                      double tol) {
  if (commit_grid_n < 1)
    throw DomainError("explore_alt_commitment: commit_grid_n must be >= 1");
  AltExploration best{0.0, 0.0, 0.0};
  bool first = true;
  for (int i = 0; i <= commit_grid_n; ++i) {
    const double s_l = static_cast<double>(i) / commit_grid_n;
    std::vector<FixedPoint> points;
    try {
      points = alt_fixed_points(demand, cost, s_l, c_l, fp_grid_n, tol);
    } catch (const Degenerate&) {
      continue;  // tangency at this commitment; skip the grid point
    }
    double worst = std::numeric_limits<double>::infinity();
    double cont = s_l;
    bool any = false;
    for (const FixedPoint& p : points) {
      if (p.kind == Stability::Unstable) continue;
      const double profit = alt_profit(demand, s_l, p.supply, c_l);
      if (profit < worst) {
        worst = profit;
        cont = p.supply;
      }
      any = true;
    }
    if (!any)
      throw InternalInconsistency(
          "alt map has no stable fixed point; the scan is inconsistent");
    if (first || worst > best.worst_profit + 1e-12) {
      best = {s_l, worst, cont};
      first = false;
    }
  }
  return best;
}

}  // namespace coord
