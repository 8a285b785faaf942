#pragma once

#include <optional>
#include <vector>

#include "coordsolve/cost_stock.hpp"
#include "coordsolve/demand.hpp"
#include "coordsolve/equilibrium.hpp"

namespace coord {

// The leader's optimal commitment. total_supply is max(s_l_star, S_high);
// boundary_hit marks an optimum pinned at the top of the stock.
struct LeaderSolution {
  double s_l_star;
  Regime regime;  // II or III
  double profit;
  double total_supply;
  bool boundary_hit;
  std::optional<double> foc_residual;  // regime-III slope at an interior optimum
};

struct Regime3Solution {
  double s_l_mon;
  double profit;
  bool boundary_hit;
  std::optional<double> foc_residual;
};

struct ExpansionCondition {
  bool holds;
  double margin;  // dP/dq + dP/ds at (S_high, S_high)
  // gamma * alpha * S_high^(alpha-1) when the demand family is specified.
  std::optional<double> specified_value;
};

// Numerical evidence that the solution outperforms every deviation below
// S_unstable under every stable continuation.
struct DominanceCertificate {
  std::vector<double> deviation_grid;
  double worst_margin;
  double worst_s_l;
  double worst_realization;
};

// Capacity-constrained commitment, evaluated under the worst-case stable
// continuation. In the band (S_low, S_unstable) the optimistic continuation
// value at s_l = k is reported alongside, because the corner trap and the
// high equilibrium disagree there.
struct CapacitySolution {
  double s_l_star;
  Regime regime;
  double profit;                // worst-case over continuations
  double total_supply;          // worst-case continuation supply
  std::optional<double> optimistic_profit_at_k;
};

// P(s_star, s_star) * s_l - C(s_l): revenue at the realized market price on
// the leader's units net of the cumulative cost of the cheapest s_l sites.
double leader_profit(const DemandModel& demand, const CostDistribution& cost,
                     double s_l, double s_star);

// Pi(S) = G^{-1}(S) * S - C(S): profit from building an entire interior
// equilibrium S at its fixed-point price.
double whole_market_profit(const CostDistribution& cost, double s);

// Pi'(S) = S / g(G^{-1}(S)); rejects masses whose quantile sits on a
// piecewise kink, where the density jumps.
double whole_market_profit_slope(const CostDistribution& cost, double s);

// Monopoly-region objective and its derivative.
double regime3_profit(const DemandModel& demand, const CostDistribution& cost,
                      double s_l);
double regime3_slope(const DemandModel& demand, const CostDistribution& cost,
                     double s_l);

// Maximizes the monopoly objective on [S_high, 1] by a 1000-point grid scan
// plus golden-section refinement (the objective need not be unimodal with
// piecewise costs).
Regime3Solution solve_regime3(const DemandModel& demand,
                              const CostDistribution& cost,
                              const EquilibriumStructure& structure);

// dP/dq + dP/ds at the high equilibrium: positive iff the leader gains by
// building past S_high.
ExpansionCondition expansion_condition(const DemandModel& demand,
                                       const EquilibriumStructure& structure);

// Compares the regime-II optimum (commit the whole high equilibrium) with
// the regime-III optimum; exact tie resolved toward the smaller commitment
// S_high.
LeaderSolution solve(const DemandModel& demand, const CostDistribution& cost,
                     const EquilibriumStructure& structure);

// Enumerates grid_n deviations spanning [0, S_unstable) against every
// element of the correspondence; throws CertificateFailure if any deviation
// weakly beats the solution.
DominanceCertificate verify_dominance(const DemandModel& demand,
                                      const CostDistribution& cost,
                                      const EquilibriumStructure& structure,
                                      const LeaderSolution& solution,
                                      int grid_n);

// Maximizes worst-case profit over s_l in [0, k]; the candidate set is a
// 1000-point grid plus the distinguished points {S_low, S_unstable, S_high,
// k} and the unconstrained optimum when feasible.
CapacitySolution solve_with_capacity(const DemandModel& demand,
                                     const CostDistribution& cost,
                                     const EquilibriumStructure& structure,
                                     double k);

// Fixed points of S = s_l + G(clamp(P(S, S))) on [0, s_l + 1]: the leader's
// units come from a separate constant-cost technology, so they shift the
// fringe response curve instead of displacing fringe sites. c_l is the
// leader's unit cost (validated here, used by alt_profit).
std::vector<FixedPoint> alt_fixed_points(const DemandModel& demand,
                                         const CostDistribution& cost,
                                         double s_l, double c_l,
                                         long long grid_n = 100000,
                                         double tol = 1e-10);

// (P(s_star, s_star) - c_l) * s_l under the alternative technology.
double alt_profit(const DemandModel& demand, double s_l, double s_star,
                  double c_l);

// Exploratory grid search over commitments for the alternative technology:
// maximizes the worst-case alt profit over the stable fixed points at each
// s_l. The model stops short of a full characterization here, so this is a
// survey tool, not a solver with optimality guarantees.
struct AltExploration {
  double s_l;
  double worst_profit;
  double worst_continuation;
};
AltExploration explore_alt_commitment(const DemandModel& demand,
                                      const CostDistribution& cost, double c_l,
                                      int commit_grid_n = 200,
                                      long long fp_grid_n = 20000,
                                      double tol = 1e-10);

}  // namespace coord
