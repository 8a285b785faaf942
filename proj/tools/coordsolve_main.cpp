#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coordsolve/errors.hpp"
#include "coordsolve/report.hpp"

namespace {

using coord::format_double;
using nlohmann::ordered_json;

// Exit codes: 0 success, 1 input/validation error, 2 Assumption-3 failure,
// 3 numerical failure.
int exit_code_for(const coord::Error& e) {
  if (dynamic_cast<const coord::NoMultiplicity*>(&e) != nullptr ||
      dynamic_cast<const coord::Degenerate*>(&e) != nullptr)
    return 2;
  if (dynamic_cast<const coord::NonConvergence*>(&e) != nullptr ||
      dynamic_cast<const coord::CertificateFailure*>(&e) != nullptr ||
      dynamic_cast<const coord::OrderingViolation*>(&e) != nullptr ||
      dynamic_cast<const coord::InternalInconsistency*>(&e) != nullptr)
    return 3;
  return 1;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw coord::Error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const ordered_json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

struct Emitter {
  std::filesystem::path out_dir;
  std::string scenario_name;

  std::filesystem::path file(const std::string& command,
                             const std::string& ext) const {
    return out_dir / (scenario_name + "." + command + "." + ext);
  }
};

std::string fixed_points_csv(const std::vector<coord::FixedPoint>& points) {
  std::ostringstream out;
  out << "supply,kind,slope\n";
  for (const auto& p : points)
    out << format_double(p.supply) << ',' << to_string(p.kind) << ','
        << format_double(p.slope) << '\n';
  return out.str();
}

int run_command(const std::string& command, const coord::Scenario& scenario,
                const Emitter& emit, const ordered_json& options) {
  using namespace coord;

  if (command == "validate") {
    const auto result = scenario.demand.validate(100);
    ordered_json doc{{"scenario", scenario.name},
                     {"demand_pass", result.pass},
                     {"cost_kind", scenario_to_json(scenario)["cost"]["kind"]}};
    if (result.violation) {
      doc["violation"] = {{"q", result.violation->q},
                          {"s", result.violation->s},
                          {"derivative", result.violation->derivative},
                          {"value", result.violation->value}};
    }
    write_json(emit.file(command, "json"), doc);
    if (!result.pass)
      throw AssumptionViolation(result.violation->q, result.violation->s,
                                "demand derivative sign violation");
    return 0;
  }

  if (command == "fixed-points") {
    const auto points =
        find_fixed_points(scenario.demand, scenario.cost,
                          scenario.solver.grid_n, scenario.solver.tol);
    write_text(emit.file(command, "csv"), fixed_points_csv(points));
    return 0;
  }

  if (command == "correspondence") {
    const double s_l = options["sl"].get<double>();
    const auto structure = validate_multiplicity(
        find_fixed_points(scenario.demand, scenario.cost,
                          scenario.solver.grid_n, scenario.solver.tol));
    const auto corr = correspondence(structure, scenario.demand,
                                     scenario.cost, s_l);
    std::ostringstream csv;
    csv << "s_l,regime,supply,tag\n";
    for (const auto& o : corr.outcomes)
      csv << format_double(s_l) << ','
          << to_string(regime_of(structure, s_l)) << ','
          << format_double(o.supply) << ',' << to_string(o.tag) << '\n';
    write_text(emit.file(command, "csv"), csv.str());
    return 0;
  }

  if (command == "dynamics") {
    const double s0 = options["s0"].get<double>();
    const double s_l = options["sl"].get<double>();
    const auto dyn = iterate_dynamics(scenario.demand, scenario.cost, s0, s_l,
                                      10000, scenario.solver.tol);
    std::ostringstream csv;
    csv << "iteration,supply\n";
    for (std::size_t i = 0; i < dyn.trajectory.size(); ++i)
      csv << i << ',' << format_double(dyn.trajectory[i]) << '\n';
    write_text(emit.file(command, "csv"), csv.str());
    write_json(emit.file(command, "json"),
               ordered_json{{"s0", s0},
                            {"s_l", s_l},
                            {"limit", dyn.limit},
                            {"iterations", dyn.iterations}});
    return 0;
  }

  if (command == "solve") {
    const auto structure = validate_multiplicity(
        find_fixed_points(scenario.demand, scenario.cost,
                          scenario.solver.grid_n, scenario.solver.tol));
    const auto solution = solve(scenario.demand, scenario.cost, structure);
    const auto cert =
        verify_dominance(scenario.demand, scenario.cost, structure, solution,
                         scenario.solver.dominance_grid_n);
    const auto expansion = expansion_condition(scenario.demand, structure);
    ordered_json doc{{"s_l_star", solution.s_l_star},
                     {"regime", to_string(solution.regime)},
                     {"profit", solution.profit},
                     {"total_supply", solution.total_supply},
                     {"boundary_hit", solution.boundary_hit},
                     {"dominance_margin", cert.worst_margin},
                     {"expansion_holds", expansion.holds},
                     {"expansion_margin", expansion.margin}};
    if (solution.foc_residual) doc["foc_residual"] = *solution.foc_residual;
    write_json(emit.file(command, "json"), doc);
    return 0;
  }

  if (command == "capacity") {
    const double k = options["k"].get<double>();
    const auto structure = validate_multiplicity(
        find_fixed_points(scenario.demand, scenario.cost,
                          scenario.solver.grid_n, scenario.solver.tol));
    const auto sol =
        solve_with_capacity(scenario.demand, scenario.cost, structure, k);
    ordered_json doc{{"k", k},
                     {"s_l_star", sol.s_l_star},
                     {"regime", to_string(sol.regime)},
                     {"profit", sol.profit},
                     {"total_supply", sol.total_supply}};
    if (sol.optimistic_profit_at_k)
      doc["optimistic_profit_at_k"] = *sol.optimistic_profit_at_k;
    write_json(emit.file(command, "json"), doc);
    return 0;
  }

  if (command == "alt") {
    const double c_l = options["cl"].get<double>();
    const double s_l = options["sl"].get<double>();
    const auto points =
        alt_fixed_points(scenario.demand, scenario.cost, s_l, c_l,
                         scenario.solver.grid_n, scenario.solver.tol);
    std::ostringstream csv;
    csv << "supply,kind,slope,profit\n";
    ordered_json arr = ordered_json::array();
    for (const auto& p : points) {
      const double profit = alt_profit(scenario.demand, s_l, p.supply, c_l);
      csv << format_double(p.supply) << ',' << to_string(p.kind) << ','
          << format_double(p.slope) << ',' << format_double(profit) << '\n';
      arr.push_back({{"supply", p.supply},
                     {"kind", to_string(p.kind)},
                     {"slope", p.slope},
                     {"profit", profit}});
    }
    write_text(emit.file(command, "csv"), csv.str());
    write_json(emit.file(command, "json"),
               ordered_json{{"c_l", c_l}, {"s_l", s_l}, {"points", arr}});
    return 0;
  }

  if (command == "welfare") {
    const auto structure = validate_multiplicity(
        find_fixed_points(scenario.demand, scenario.cost,
                          scenario.solver.grid_n, scenario.solver.tol));
    const auto leader = solve(scenario.demand, scenario.cost, structure);
    const auto planner = planner_solve(scenario.demand, scenario.cost);
    std::ostringstream csv;
    csv << "point_label,supply,welfare,marginal_welfare,externality_gap\n";
    const auto row = [&](const std::string& label, double s) {
      csv << label << ',' << format_double(s) << ','
          << format_double(welfare(scenario.demand, scenario.cost, s)) << ','
          << format_double(marginal_welfare(scenario.demand, scenario.cost, s))
          << ',' << format_double(externality_gap(scenario.demand, s)) << '\n';
    };
    row("s_low", structure.s_low.supply);
    row("s_unstable", structure.s_unstable.supply);
    row("s_high", structure.s_high.supply);
    row("leader", leader.total_supply);
    row("planner", planner.s_fb);
    write_text(emit.file(command, "csv"), csv.str());
    return 0;
  }

  if (command == "planner") {
    const auto planner = planner_solve(scenario.demand, scenario.cost);
    write_json(emit.file(command, "json"),
               ordered_json{{"s_fb", planner.s_fb},
                            {"boundary_hit", planner.boundary_hit},
                            {"foc_residual", planner.foc_residual}});
    return 0;
  }

  if (command == "decompose") {
    const auto structure = validate_multiplicity(
        find_fixed_points(scenario.demand, scenario.cost,
                          scenario.solver.grid_n, scenario.solver.tol));
    const auto d = decompose(scenario.demand, scenario.cost, structure);
    const double w_low =
        welfare(scenario.demand, scenario.cost, structure.s_low.supply);
    const double w_high =
        welfare(scenario.demand, scenario.cost, structure.s_high.supply);
    write_json(
        emit.file(command, "json"),
        ordered_json{{"term_a", d.term_a},
                     {"term_b", d.term_b},
                     {"term_c", d.term_c},
                     {"w_low", w_low},
                     {"w_high", w_high},
                     {"identity_residual",
                      d.term_a - d.term_c + d.term_b - (w_high - w_low)}});
    return 0;
  }

  if (command == "sweep") {
    coord::SweepSpec spec{options["param"].get<std::string>(),
                          options["from"].get<double>(),
                          options["to"].get<double>(),
                          options["steps"].get<int>()};
    const auto rows = run_sweep(scenario, spec);
    write_text(emit.file(command, "csv"), sweep_csv(rows));
    return 0;
  }

  if (command == "report") {
    const auto result = run_pipeline(scenario);
    write_json(emit.file(command, "json"),
               pipeline_to_json(scenario, result));
    return 0;
  }

  throw coord::Error("unknown command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium, Stackelberg commitment, and welfare solver for "
               "housing-development coordination games"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  app.add_option("-s,--scenario", scenario_path, "scenario JSON file")
      ->required();
  app.add_option("-o,--out", out_dir, "output directory (default: .)");

  double sl = 0.0, s0 = 0.0, k = 0.0, cl = 0.0;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 0;
  std::string sweep_param;

  app.add_subcommand("validate", "check demand/cost assumptions");
  app.add_subcommand("fixed-points", "find and classify all fixed points");
  auto* corr = app.add_subcommand("correspondence",
                                  "stable continuations for a commitment");
  corr->add_option("--sl", sl, "leader commitment")->required();
  auto* dyn = app.add_subcommand("dynamics", "best-response iteration");
  dyn->add_option("--s0", s0, "initial supply")->required();
  dyn->add_option("--sl", sl, "leader commitment")->required();
  app.add_subcommand("solve", "leader optimum with dominance certificate");
  auto* cap = app.add_subcommand("capacity", "capacity-constrained optimum");
  cap->add_option("--k", k, "capacity bound")->required();
  auto* alt = app.add_subcommand("alt", "constant-cost leader technology");
  alt->add_option("--cl", cl, "leader unit cost")->required();
  alt->add_option("--sl", sl, "leader commitment (default 0)");
  app.add_subcommand("welfare", "welfare table at the key supply levels");
  app.add_subcommand("planner", "first-best supply");
  app.add_subcommand("decompose", "welfare-difference decomposition");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep");
  sweep->add_option("--param", sweep_param, "q_max|beta|gamma|alpha|c_l|k")
      ->required();
  sweep->add_option("--from", sweep_from, "first value")->required();
  sweep->add_option("--to", sweep_to, "last value")->required();
  sweep->add_option("--steps", sweep_steps, "grid size (>= 2)")->required();
  app.add_subcommand("report", "full pipeline into one JSON document");

  // Let --scenario/--out appear on either side of the subcommand.
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    const coord::Scenario scenario = coord::load_scenario(scenario_path);
    std::filesystem::create_directories(out_dir);
    const Emitter emit{out_dir, scenario.name};
    const std::string command = app.get_subcommands().front()->get_name();
    ordered_json options{{"sl", sl},       {"s0", s0},
                         {"k", k},         {"cl", cl},
                         {"param", sweep_param}, {"from", sweep_from},
                         {"to", sweep_to}, {"steps", sweep_steps}};
    return run_command(command, scenario, emit, options);
  } catch (const coord::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
