#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "coordsolve/cost_stock.hpp"
#include "coordsolve/demand.hpp"

namespace coord {

struct SolverOptions {
  long long grid_n = 100000;
  double tol = 1e-10;
  int dominance_grid_n = 500;
};

// A fully validated problem instance: named demand and cost primitives plus
// solver settings. Construction goes through the JSON loaders below, which
// enforce every component invariant and name the first offending field.
struct Scenario {
  std::string name;
  DemandParams demand_params;
  DemandModel demand;
  CostDistribution cost;
  SolverOptions solver;

  // Rebuilds the demand model after a parameter change (used by sweeps).
  static Scenario with_demand(const Scenario& base, const DemandParams& p);
};

Scenario scenario_from_json(const nlohmann::ordered_json& doc);
Scenario load_scenario(const std::string& path);

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

}  // namespace coord
