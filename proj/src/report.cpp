#include "coordsolve/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "coordsolve/errors.hpp"

namespace coord {

namespace {

using nlohmann::ordered_json;

ordered_json fixed_point_json(const FixedPoint& p) {
  return {{"supply", p.supply},
          {"kind", to_string(p.kind)},
          {"slope", p.slope}};
}

SweepRow evaluate_demand_point(const Scenario& base, const std::string& param,
                               double value) {
  SweepRow row;
  row.param_value = value;
  DemandParams p = base.demand_params;
  if (param == "q_max")
    p.q_max = value;
  else if (param == "beta")
    p.beta = value;
  else if (param == "gamma")
    p.gamma = value;
  else if (param == "alpha")
    p.alpha = value;

  try {
    const Scenario scenario = Scenario::with_demand(base, p);
    const auto points = find_fixed_points(scenario.demand, scenario.cost,
                                          scenario.solver.grid_n,
                                          scenario.solver.tol);
    const auto structure = validate_multiplicity(points);
    row.s_low = structure.s_low.supply;
    row.s_unstable = structure.s_unstable.supply;
    row.s_high = structure.s_high.supply;
    const auto leader = solve(scenario.demand, scenario.cost, structure);
    row.s_l_star = leader.s_l_star;
    row.regime = to_string(leader.regime);
    row.leader_profit = leader.profit;
    const auto planner = planner_solve(scenario.demand, scenario.cost);
    row.s_fb = planner.s_fb;
    row.w_low = welfare(scenario.demand, scenario.cost, *row.s_low);
    row.w_high = welfare(scenario.demand, scenario.cost, *row.s_high);
    row.w_leader =
        welfare(scenario.demand, scenario.cost, leader.total_supply);
    row.w_fb = welfare(scenario.demand, scenario.cost, planner.s_fb);
    row.expansion_margin =
        expansion_condition(scenario.demand, structure).margin;
    row.status = "ok";
  } catch (const NoMultiplicity&) {
    row.status = "no_multiplicity";
  } catch (const Degenerate&) {
    row.status = "degenerate";
  } catch (const ValidationError&) {
    row.status = "invalid";
  } catch (const Error&) {
    row.status = "error";
  }
  return row;
}

SweepRow evaluate_capacity_point(const Scenario& scenario,
                                 const EquilibriumStructure& structure,
                                 const PlannerSolution& planner, double k) {
  SweepRow row;
  row.param_value = k;
  row.s_low = structure.s_low.supply;
  row.s_unstable = structure.s_unstable.supply;
  row.s_high = structure.s_high.supply;
  try {
    const auto sol = solve_with_capacity(scenario.demand, scenario.cost,
                                         structure, k);
    row.s_l_star = sol.s_l_star;
    row.regime = to_string(sol.regime);
    row.leader_profit = sol.profit;
    row.s_fb = planner.s_fb;
    row.w_low = welfare(scenario.demand, scenario.cost, *row.s_low);
    row.w_high = welfare(scenario.demand, scenario.cost, *row.s_high);
    row.w_leader =
        welfare(scenario.demand, scenario.cost, sol.total_supply);
    row.w_fb = welfare(scenario.demand, scenario.cost, planner.s_fb);
    row.expansion_margin =
        expansion_condition(scenario.demand, structure).margin;
    row.status = "ok";
  } catch (const DomainError&) {
    row.status = "invalid";
  } catch (const Error&) {
    row.status = "error";
  }
  return row;
}

SweepRow evaluate_alt_point(const Scenario& scenario,
                            const EquilibriumStructure& structure,
                            const PlannerSolution& planner, double c_l) {
  SweepRow row;
  row.param_value = c_l;
  row.s_low = structure.s_low.supply;
  row.s_unstable = structure.s_unstable.supply;
  row.s_high = structure.s_high.supply;
  try {
    // Exploratory search over commitments under the constant-cost
    // technology; worst case over the stable fixed points at each s_l.
    const auto best =
        explore_alt_commitment(scenario.demand, scenario.cost, c_l);
    row.s_l_star = best.s_l;
    row.regime = "alt";
    row.leader_profit = best.worst_profit;
    row.s_fb = planner.s_fb;
    row.w_low = welfare(scenario.demand, scenario.cost, *row.s_low);
    row.w_high = welfare(scenario.demand, scenario.cost, *row.s_high);
    row.w_leader = alt_welfare(scenario.demand, scenario.cost, best.s_l,
                               best.worst_continuation, c_l)
                       .welfare;
    row.w_fb = welfare(scenario.demand, scenario.cost, planner.s_fb);
    row.expansion_margin =
        expansion_condition(scenario.demand, structure).margin;
    row.status = "ok";
  } catch (const DomainError&) {
    row.status = "invalid";
  } catch (const Error&) {
    row.status = "error";
  }
  return row;
}

unsigned sweep_thread_cap() {
  if (const char* env = std::getenv("COORD_SOLVE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace

PipelineResult run_pipeline(const Scenario& scenario) {
  PipelineResult r;
  r.fixed_points = find_fixed_points(scenario.demand, scenario.cost,
                                     scenario.solver.grid_n,
                                     scenario.solver.tol);
  r.structure = validate_multiplicity(r.fixed_points);
  r.expansion = expansion_condition(scenario.demand, r.structure);
  r.leader = solve(scenario.demand, scenario.cost, r.structure);
  r.dominance = verify_dominance(scenario.demand, scenario.cost, r.structure,
                                 r.leader, scenario.solver.dominance_grid_n);
  r.planner = planner_solve(scenario.demand, scenario.cost);
  r.decomposition = decompose(scenario.demand, scenario.cost, r.structure);
  r.ordering = ordering_report(scenario.demand, scenario.cost, r.structure,
                               r.leader, r.planner);
  return r;
}

nlohmann::ordered_json pipeline_to_json(const Scenario& scenario,
                                const PipelineResult& r) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["scenario"] = scenario_to_json(scenario);

  ordered_json points = ordered_json::array();
  for (const auto& p : r.fixed_points) points.push_back(fixed_point_json(p));
  doc["fixed_points"] = points;

  doc["structure"] = {{"s_low", fixed_point_json(r.structure.s_low)},
                      {"s_unstable", fixed_point_json(r.structure.s_unstable)},
                      {"s_high", fixed_point_json(r.structure.s_high)}};

  ordered_json expansion{{"holds", r.expansion.holds},
                         {"margin", r.expansion.margin}};
  if (r.expansion.specified_value)
    expansion["specified_value"] = *r.expansion.specified_value;
  doc["expansion_condition"] = expansion;

  ordered_json leader{{"s_l_star", r.leader.s_l_star},
                      {"regime", to_string(r.leader.regime)},
                      {"profit", r.leader.profit},
                      {"total_supply", r.leader.total_supply},
                      {"boundary_hit", r.leader.boundary_hit},
                      {"dominance_margin", r.dominance.worst_margin}};
  if (r.leader.foc_residual) leader["foc_residual"] = *r.leader.foc_residual;
  doc["leader"] = leader;

  doc["planner"] = {{"s_fb", r.planner.s_fb},
                    {"boundary_hit", r.planner.boundary_hit},
                    {"foc_residual", r.planner.foc_residual}};

  doc["decomposition"] = {
      {"term_a", r.decomposition.term_a},
      {"term_b", r.decomposition.term_b},
      {"term_c", r.decomposition.term_c},
      {"w_low", r.ordering.points[0].welfare},
      {"w_high", r.ordering.points[1].welfare}};

  ordered_json table = ordered_json::array();
  for (const auto& p : r.ordering.points)
    table.push_back({{"point_label", p.label},
                     {"supply", p.supply},
                     {"welfare", p.welfare},
                     {"marginal_welfare", p.marginal_welfare},
                     {"externality_gap", p.externality_gap}});
  doc["welfare_table"] = table;
  doc["ordering"] = {{"middle_strict", r.ordering.middle_strict},
                     {"final_strict", r.ordering.final_strict}};
  return doc;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario,
                                const SweepSpec& spec) {
  if (spec.steps < 2) throw ValidationError("sweep.steps", "must be >= 2");
  if (!(spec.from < spec.to))
    throw ValidationError("sweep.from", "must be < sweep.to");
  const bool demand_param = spec.parameter == "q_max" ||
                            spec.parameter == "beta" ||
                            spec.parameter == "gamma" ||
                            spec.parameter == "alpha";
  if (!demand_param && spec.parameter != "c_l" && spec.parameter != "k")
    throw ValidationError("sweep.parameter",
                          "must be one of q_max, beta, gamma, alpha, c_l, k");

  // The variant parameters evaluate against the baseline structure, which
  // must itself be valid.
  std::optional<EquilibriumStructure> base_structure;
  std::optional<PlannerSolution> base_planner;
  if (!demand_param) {
    base_structure = validate_multiplicity(
        find_fixed_points(scenario.demand, scenario.cost,
                          scenario.solver.grid_n, scenario.solver.tol));
    base_planner = planner_solve(scenario.demand, scenario.cost);
  }

  const auto evaluate = [&](double value) {
    if (demand_param)
      return evaluate_demand_point(scenario, spec.parameter, value);
    if (spec.parameter == "k")
      return evaluate_capacity_point(scenario, *base_structure, *base_planner,
                                     value);
    return evaluate_alt_point(scenario, *base_structure, *base_planner, value);
  };

  std::vector<SweepRow> rows(spec.steps);
  const auto value_at = [&](int i) {
    return spec.from + (spec.to - spec.from) * i / (spec.steps - 1);
  };

  const unsigned threads = std::min<unsigned>(
      sweep_thread_cap(), static_cast<unsigned>(spec.steps));
  if (threads <= 1) {
    for (int i = 0; i < spec.steps; ++i) rows[i] = evaluate(value_at(i));
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        for (int i = next.fetch_add(1); i < spec.steps;
             i = next.fetch_add(1))
          rows[i] = evaluate(value_at(i));
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "param_value,status,s_low,s_unstable,s_high,s_l_star,regime,"
         "leader_profit,s_fb,w_low,w_high,w_leader,w_fb,expansion_margin\n";
  const auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const auto& r : rows) {
    out << format_double(r.param_value) << ',' << r.status << ','
        << cell(r.s_low) << ',' << cell(r.s_unstable) << ','
        << cell(r.s_high) << ',' << cell(r.s_l_star) << ',' << r.regime << ','
        << cell(r.leader_profit) << ',' << cell(r.s_fb) << ','
        << cell(r.w_low) << ',' << cell(r.w_high) << ',' << cell(r.w_leader)
        << ',' << cell(r.w_fb) << ',' << cell(r.expansion_margin) << '\n';
  }
  return out.str();
}

}  // namespace coord
