#pragma once

#include <string>
#include <vector>

#include "coordsolve/cost_stock.hpp"
#include "coordsolve/demand.hpp"
#include "coordsolve/equilibrium.hpp"
#include "coordsolve/leader.hpp"

namespace coord {

struct PlannerSolution {
  double s_fb;
  bool boundary_hit;
  double foc_residual;  // marginal welfare at s_fb; ~0 when interior
};

// Terms of the welfare difference W(S_high) - W(S_low):
//   A: int_{S_low}^{S_high} P(q, S_high) dq
//   B: int_0^{S_low} [P(q, S_high) - P(q, S_low)] dq
//   C: C(S_high) - C(S_low)
// and A - C + B recovers the difference exactly.
struct Decomposition {
  double term_a;
  double term_b;
  double term_c;
};

struct WelfarePoint {
  std::string label;
  double supply;
  double welfare;
  double marginal_welfare;
  double externality_gap;
};

// The welfare ladder across the computed outcomes. Strictness flags mark
// the inequalities certified strict by the theory: the middle one when the
// leader expands past S_high toward an interior planner optimum, the final
// one when the commitment stays below the optimum. Boundary coincidences at
// the top of the stock are accepted and simply not flagged.
struct OrderingReport {
  std::vector<WelfarePoint> points;  // s_low, s_high, leader, planner
  bool middle_strict;
  bool final_strict;
};

struct AltWelfare {
  double welfare;
  bool leader_efficient;  // c_l * s_l < displaced fringe cost
  double leader_cost;
  double displaced_fringe_cost;
};

// B(S) = int_0^S P(q, S) dq, gross consumer benefit.
double gross_benefit(const DemandModel& demand, double s);

// W(S) = B(S) - C(S); prices net out of the welfare expression.
double welfare(const DemandModel& demand, const CostDistribution& cost,
               double s);

// B(S) - P(S,S) * S. For the specified demand family the network term
// cancels, leaving s^2 / (2 beta).
double consumer_surplus(const DemandModel& demand, double s);

// dW/dS = P(S,S) + externality_gap(S) - G^{-1}(S).
double marginal_welfare(const DemandModel& demand,
                        const CostDistribution& cost, double s);

// int_0^S dP/dS(q, S) dq: the uninternalized network benefit a marginal
// unit confers on existing consumers.
double externality_gap(const DemandModel& demand, double s);

// Maximizes W on [0, 1] by a 10000-point grid scan plus golden-section
// refinement; W need not be concave with piecewise costs, so the search is
// global and single-peakedness is observed, not assumed.
PlannerSolution planner_solve(const DemandModel& demand,
                              const CostDistribution& cost);

Decomposition decompose(const DemandModel& demand,
                        const CostDistribution& cost,
                        const EquilibriumStructure& structure);

// Checks W(S_low) < W(S_high) <= W(leader total) <= W(s_fb) and returns the
// annotated table; any failure beyond tolerance raises OrderingViolation.
OrderingReport ordering_report(const DemandModel& demand,
                               const CostDistribution& cost,
                               const EquilibriumStructure& structure,
                               const LeaderSolution& leader,
                               const PlannerSolution& planner);

// Welfare when the leader builds s_l units at constant cost c_l and the
// fringe supplies the remaining s - s_l from the common stock. Also reports
// whether the leader produced more cheaply than the fringe units displaced.
AltWelfare alt_welfare(const DemandModel& demand, const CostDistribution& cost,
                       double s_l, double s, double c_l);

}  // namespace coord
