#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "coordsolve/scenario.hpp"
#include "coordsolve/equilibrium.hpp"
#include "coordsolve/leader.hpp"
#include "coordsolve/welfare.hpp"

namespace coord {

// Everything the full pipeline produces for one scenario: fixed points,
// validated structure, leader solution with its dominance margin, planner
// optimum, decomposition, and the ordering table.
struct PipelineResult {
  std::vector<FixedPoint> fixed_points;
  EquilibriumStructure structure;
  ExpansionCondition expansion;
  LeaderSolution leader;
  DominanceCertificate dominance;
  PlannerSolution planner;
  Decomposition decomposition;
  OrderingReport ordering;
};

PipelineResult run_pipeline(const Scenario& scenario);

nlohmann::ordered_json pipeline_to_json(const Scenario& scenario,
                                const PipelineResult& result);

// One sweep row; value fields are empty when the swept point failed
// validation (status records why).
struct SweepRow {
  double param_value;
  std::string status;  // ok | no_multiplicity | degenerate | invalid | error
  std::optional<double> s_low, s_unstable, s_high;
  std::optional<double> s_l_star;
  std::string regime;
  std::optional<double> leader_profit;
  std::optional<double> s_fb;
  std::optional<double> w_low, w_high, w_leader, w_fb;
  std::optional<double> expansion_margin;
};

struct SweepSpec {
  std::string parameter;  // q_max | beta | gamma | alpha | c_l | k
  double from;
  double to;
  int steps;
};

// Evaluates the scenario at each grid value of the swept parameter. Rows
// never abort on per-point Assumption-3 failures; the status column records
// them. Points may be evaluated in parallel (capped by the
// COORD_SOLVE_THREADS environment variable); row order is by index, and the
// output is identical to a sequential run.
std::vector<SweepRow> run_sweep(const Scenario& scenario,
                                const SweepSpec& spec);

// Fixed-width CSV formatting: '.' decimal point, 17 significant digits.
std::string format_double(double v);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace coord
