#include "coordsolve/scenario.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coordsolve/errors.hpp"

namespace coord {

namespace {

using json = nlohmann::ordered_json;

double require_number(const json& obj, const std::string& key,
                      const std::string& path) {
  if (!obj.contains(key)) throw ValidationError(path, "missing field");
  if (!obj[key].is_number())
    throw ValidationError(path, "must be a decimal number");
  return obj[key].get<double>();
}

CostDistribution cost_from_json(const json& cost) {
  if (!cost.is_object()) throw ValidationError("cost", "must be an object");
  if (!cost.contains("kind")) throw ValidationError("cost.kind", "missing field");
  const std::string kind = cost["kind"].is_string()
                               ? cost["kind"].get<std::string>()
                               : std::string();
  if (kind == "uniform")
    return CostDistribution::uniform(
        require_number(cost, "c_bar", "cost.c_bar"));
  if (kind == "smoothstep")
    return CostDistribution::smoothstep(
        require_number(cost, "c_bar", "cost.c_bar"));
  if (kind == "piecewise") {
    if (!cost.contains("knots") || !cost["knots"].is_array())
      throw ValidationError("cost.knots", "must be an array of [cost, mass]");
    std::vector<Knot> knots;
    std::size_t i = 0;
    for (const auto& k : cost["knots"]) {
      const std::string path = "cost.knots[" + std::to_string(i) + "]";
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() ||
          !k[1].is_number())
        throw ValidationError(path, "must be a [cost, mass] pair");
      knots.push_back({k[0].get<double>(), k[1].get<double>()});
      ++i;
    }
    return CostDistribution::piecewise_linear(std::move(knots));
  }
  throw ValidationError("cost.kind",
                        "must be one of uniform, smoothstep, piecewise");
}

}  // namespace

Scenario Scenario::with_demand(const Scenario& base, const DemandParams& p) {
  return Scenario{base.name, p, DemandModel::specified_linear_network(p),
                  base.cost, base.solver};
}

Scenario scenario_from_json(const nlohmann::ordered_json& doc) {
  if (!doc.is_object())
    throw ValidationError("", "scenario document must be an object");
  if (!doc.contains("name") || !doc["name"].is_string())
    throw ValidationError("name", "missing or not a string");
  if (!doc.contains("demand"))
    throw ValidationError("demand", "missing field");
  if (!doc.contains("cost")) throw ValidationError("cost", "missing field");

  const auto& dem = doc["demand"];
  DemandParams params{require_number(dem, "q_max", "demand.q_max"),
                      require_number(dem, "beta", "demand.beta"),
                      require_number(dem, "gamma", "demand.gamma"),
                      require_number(dem, "alpha", "demand.alpha")};

  SolverOptions solver;
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    if (s.contains("grid_n"))
      solver.grid_n = static_cast<long long>(
          require_number(s, "grid_n", "solver.grid_n"));
    if (s.contains("tol")) solver.tol = require_number(s, "tol", "solver.tol");
    if (s.contains("dominance_grid_n"))
      solver.dominance_grid_n = static_cast<int>(
          require_number(s, "dominance_grid_n", "solver.dominance_grid_n"));
  }
  if (solver.grid_n < 100)
    throw ValidationError("solver.grid_n", "must be >= 100");
  if (!(solver.tol > 0.0)) throw ValidationError("solver.tol", "must be > 0");
  if (solver.dominance_grid_n < 1)
    throw ValidationError("solver.dominance_grid_n", "must be >= 1");

  return Scenario{doc["name"].get<std::string>(), params,
                  DemandModel::specified_linear_network(params),
                  cost_from_json(doc["cost"]), solver};
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed scenario document: " + std::string(e.what()));
  }
  return scenario_from_json(doc);
}

nlohmann::ordered_json scenario_to_json(const Scenario& scenario) {
  json demand{{"q_max", scenario.demand_params.q_max},
              {"beta", scenario.demand_params.beta},
              {"gamma", scenario.demand_params.gamma},
              {"alpha", scenario.demand_params.alpha}};
  json cost;
  switch (scenario.cost.kind()) {
    case CostDistribution::Kind::Uniform:
      cost = {{"kind", "uniform"}, {"c_bar", scenario.cost.c_bar()}};
      break;
    case CostDistribution::Kind::Smoothstep:
      cost = {{"kind", "smoothstep"}, {"c_bar", scenario.cost.c_bar()}};
      break;
    case CostDistribution::Kind::PiecewiseLinear: {
      json arr = json::array();
      for (const auto& k : *scenario.cost.piecewise_knots())
        arr.push_back({k.cost, k.mass});
      cost = {{"kind", "piecewise"}, {"knots", arr}};
      break;
    }
  }
  return json{{"name", scenario.name},
              {"demand", demand},
              {"cost", cost},
              {"solver",
               {{"grid_n", scenario.solver.grid_n},
                {"tol", scenario.solver.tol},
                {"dominance_grid_n", scenario.solver.dominance_grid_n}}}};
}

}  // namespace coord
