#include "coordsolve/welfare.hpp"

#include <algorithm>
#include <cmath>

#include "coordsolve/errors.hpp"
#include "coordsolve/numeric.hpp"

namespace coord {

namespace {

constexpr double kBoundaryTol = 1e-9;
constexpr double kOrderTol = 1e-9;

void check_mass(double s, const char* op) {
  if (!(s >= 0.0 && s <= 1.0))
    throw DomainError(std::string(op) + ": mass outside [0, 1]");
}

}  // namespace

double gross_benefit(const DemandModel& demand, double s) {
  check_mass(s, "gross_benefit");
  return demand.benefit(s);
}

double welfare(const DemandModel& demand, const CostDistribution& cost,
               double s) {
  check_mass(s, "welfare");
  return demand.benefit(s) - cost.cumulative_cost(s);
}

double consumer_surplus(const DemandModel& demand, double s) {
  check_mass(s, "consumer_surplus");
  return demand.benefit(s) - demand.price(s, s) * s;
}

double externality_gap(const DemandModel& demand, double s) {
  if (!(s >= 0.0)) throw DomainError("externality_gap: mass must be >= 0");
  return demand.supply_effect_integral(s);
}

double marginal_welfare(const DemandModel& demand,
                        const CostDistribution& cost, double s) {
  check_mass(s, "marginal_welfare");
  return demand.price(s, s) + demand.supply_effect_integral(s) -
         cost.quantile(s);
}

PlannerSolution planner_solve(const DemandModel& demand,
                              const CostDistribution& cost) {
  const auto objective = [&](double s) { return welfare(demand, cost, s); };

  constexpr int kGrid = 10000;
  int best = 0;
  double best_value = objective(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double s = static_cast<double>(i) / kGrid;
    const double v = objective(s);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double bra = static_cast<double>(std::max(0, best - 1)) / kGrid;
  const double brb = static_cast<double>(std::min(kGrid, best + 1)) / kGrid;
  double s_fb = numeric::golden_max(objective, bra, brb, 1e-12);

  PlannerSolution sol;
  sol.boundary_hit = (1.0 - s_fb <= kBoundaryTol) || (s_fb <= kBoundaryTol);
  if (1.0 - s_fb <= kBoundaryTol) s_fb = 1.0;
  if (s_fb <= kBoundaryTol) s_fb = 0.0;
  sol.s_fb = s_fb;
  sol.foc_residual = marginal_welfare(demand, cost, s_fb);
  return sol;
}

Decomposition decompose(const DemandModel& demand,
                        const CostDistribution& cost,
                        const EquilibriumStructure& structure) {
  const double s_low = structure.s_low.supply;
  const double s_high = structure.s_high.supply;
  Decomposition d;
  d.term_a = demand.partial_benefit(s_low, s_high, s_high);
  d.term_b = demand.partial_benefit(0.0, s_low, s_high) -
             demand.partial_benefit(0.0, s_low, s_low);
  d.term_c = cost.cumulative_cost(s_high) - cost.cumulative_cost(s_low);
  return d;
}

OrderingReport ordering_report(const DemandModel& demand,
                               const CostDistribution& cost,
                               const EquilibriumStructure& structure,
                               const LeaderSolution& leader,
                               const PlannerSolution& planner) {
  const auto point = [&](const std::string& label, double s) {
    return WelfarePoint{label, s, welfare(demand, cost, s),
                        marginal_welfare(demand, cost, s),
                        externality_gap(demand, s)};
  };

  OrderingReport report;
  report.points = {point("s_low", structure.s_low.supply),
                   point("s_high", structure.s_high.supply),
                   point("leader", leader.total_supply),
                   point("planner", planner.s_fb)};
  const double w_low = report.points[0].welfare;
  const double w_high = report.points[1].welfare;
  const double w_leader = report.points[2].welfare;
  const double w_fb = report.points[3].welfare;

  if (!(w_high - w_low > kOrderTol))
    throw OrderingViolation("W(S_high) does not strictly exceed W(S_low)");
  if (w_high > w_leader + kOrderTol)
    throw OrderingViolation("W(S_high) exceeds the leader outcome welfare");
  if (w_leader > w_fb + kOrderTol)
    throw OrderingViolation("leader outcome welfare exceeds the planner's");

  report.middle_strict =
      leader.regime == Regime::III && leader.s_l_star < planner.s_fb;
  report.final_strict = leader.s_l_star < planner.s_fb;
  if (report.middle_strict && !(w_leader - w_high > kOrderTol))
    throw OrderingViolation(
        "monopoly-region expansion did not strictly raise welfare");
  if (report.final_strict && w_leader - w_fb > kOrderTol)
    throw OrderingViolation("planner optimum below the leader outcome");
  return report;
}

AltWelfare alt_welfare(const DemandModel& demand, const CostDistribution& cost,
                       double s_l, double s, double c_l) {
  if (!(s_l >= 0.0 && s_l <= s))
    throw DomainError("alt_welfare: need 0 <= s_l <= s");
  const double fringe = s - s_l;
  if (!(fringe >= 0.0 && fringe <= 1.0))
    throw DomainError("alt_welfare: fringe mass s - s_l outside [0, 1]");

  AltWelfare out;
  out.leader_cost = c_l * s_l;
  // Displaced units are those between G^{-1}(s - s_l) and G^{-1}(s) in the
  // all-fringe allocation of the same total supply. s may exceed 1 here
  // (the leader produces outside the common stock); the comparison then
  // uses the full stock cost.
  const double s_cap = std::min(s, 1.0);
  out.displaced_fringe_cost =
      cost.cumulative_cost(s_cap) - cost.cumulative_cost(fringe);
  out.leader_efficient = out.leader_cost < out.displaced_fringe_cost;
  out.welfare =
      demand.benefit(s) - out.leader_cost - cost.cumulative_cost(fringe);
  return out;
}

}  // namespace coord
