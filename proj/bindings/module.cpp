#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "coordsolve/errors.hpp"
#include "coordsolve/report.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  using namespace coord;

  m.doc() = "Equilibrium, Stackelberg commitment, and welfare computations "
            "for housing-development coordination games with network effects";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "ScenarioValidationError");
  py::register_exception<AssumptionViolation>(m, "AssumptionViolation");
  py::register_exception<Degenerate>(m, "DegenerateError");
  py::register_exception<NoMultiplicity>(m, "NoMultiplicityError");
  py::register_exception<NonConvergence>(m, "NonConvergenceError");
  py::register_exception<InternalInconsistency>(m, "InternalInconsistencyError");
  py::register_exception<CertificateFailure>(m, "CertificateFailureError");
  py::register_exception<OrderingViolation>(m, "OrderingViolationError");

  py::class_<DemandParams>(m, "DemandParams")
      .def(py::init([](double q_max, double beta, double gamma, double alpha) {
             return DemandParams{q_max, beta, gamma, alpha};
           }),
           py::arg("q_max"), py::arg("beta"), py::arg("gamma"),
           py::arg("alpha"))
      .def_readonly("q_max", &DemandParams::q_max)
      .def_readonly("beta", &DemandParams::beta)
      .def_readonly("gamma", &DemandParams::gamma)
      .def_readonly("alpha", &DemandParams::alpha);

  py::class_<DemandModel>(m, "DemandModel")
      .def_static("specified_linear_network",
                  &DemandModel::specified_linear_network, py::arg("params"))
      .def("price", &DemandModel::price, py::arg("q"), py::arg("s"))
      .def("dprice_dq", &DemandModel::dprice_dq, py::arg("q"), py::arg("s"))
      .def("dprice_ds", &DemandModel::dprice_ds, py::arg("q"), py::arg("s"))
      .def("validate",
           [](const DemandModel& model, int grid_n) {
             const auto v = model.validate(grid_n);
             return v.pass;
           },
           py::arg("grid_n") = 100);

  py::class_<Knot>(m, "Knot")
      .def(py::init([](double cost, double mass) {
             return Knot{cost, mass};
           }),
           py::arg("cost"), py::arg("mass"))
      .def_readonly("cost", &Knot::cost)
      .def_readonly("mass", &Knot::mass);

  py::class_<CostDistribution>(m, "CostDistribution")
      .def_static("uniform", &CostDistribution::uniform, py::arg("c_bar"))
      .def_static("smoothstep", &CostDistribution::smoothstep,
                  py::arg("c_bar"))
      .def_static("piecewise_linear",
                  [](const std::vector<std::pair<double, double>>& pairs) {
                    std::vector<Knot> knots;
                    knots.reserve(pairs.size());
                    for (const auto& [c, s] : pairs) knots.push_back({c, s});
                    return CostDistribution::piecewise_linear(std::move(knots));
                  },
                  py::arg("knots"))
      .def("cdf", &CostDistribution::cdf, py::arg("c"))
      .def("quantile", &CostDistribution::quantile, py::arg("s"))
      .def("density", &CostDistribution::density, py::arg("c"))
      .def("cumulative_cost", &CostDistribution::cumulative_cost,
           py::arg("s"))
      .def_property_readonly("c_bar", &CostDistribution::c_bar);

  py::enum_<Stability>(m, "Stability")
      .value("STABLE", Stability::Stable)
      .value("UNSTABLE", Stability::Unstable)
      .value("CORNER_STABLE", Stability::CornerStable);

  py::enum_<Regime>(m, "Regime")
      .value("I", Regime::I)
      .value("INTERMEDIATE", Regime::Intermediate)
      .value("II", Regime::II)
      .value("III", Regime::III);

  py::enum_<OutcomeTag>(m, "OutcomeTag")
      .value("LOW_INTERIOR", OutcomeTag::LowInterior)
      .value("HIGH_INTERIOR", OutcomeTag::HighInterior)
      .value("CORNER_TRAP", OutcomeTag::CornerTrap)
      .value("LEADER_ONLY", OutcomeTag::LeaderOnly);

  py::class_<FixedPoint>(m, "FixedPoint")
      .def_readonly("supply", &FixedPoint::supply)
      .def_readonly("kind", &FixedPoint::kind)
      .def_readonly("slope", &FixedPoint::slope)
      .def("__repr__", [](const FixedPoint& p) {
        return "FixedPoint(supply=" + std::to_string(p.supply) + ", kind=" +
               to_string(p.kind) + ")";
      });

  py::class_<EquilibriumStructure>(m, "EquilibriumStructure")
      .def_readonly("s_low", &EquilibriumStructure::s_low)
      .def_readonly("s_unstable", &EquilibriumStructure::s_unstable)
      .def_readonly("s_high", &EquilibriumStructure::s_high);

  py::class_<Outcome>(m, "Outcome")
      .def_readonly("supply", &Outcome::supply)
      .def_readonly("tag", &Outcome::tag);

  py::class_<Correspondence>(m, "Correspondence")
      .def_readonly("outcomes", &Correspondence::outcomes);

  py::class_<Dynamics>(m, "Dynamics")
      .def_readonly("trajectory", &Dynamics::trajectory)
      .def_readonly("limit", &Dynamics::limit)
      .def_readonly("iterations", &Dynamics::iterations);

  py::class_<CutoffCheck>(m, "CutoffCheck")
      .def_readonly("passed", &CutoffCheck::pass)
      .def_readonly("implied_entrant_mass", &CutoffCheck::implied_entrant_mass)
      .def_readonly("expected_entrant_mass",
                    &CutoffCheck::expected_entrant_mass);

  m.def("response", &response, py::arg("demand"), py::arg("cost"),
        py::arg("s"));
  m.def("find_fixed_points", &find_fixed_points, py::arg("demand"),
        py::arg("cost"), py::arg("grid_n") = 100000, py::arg("tol") = 1e-10);
  m.def("validate_multiplicity", &validate_multiplicity, py::arg("points"));
  m.def("regime_of", &regime_of, py::arg("structure"), py::arg("s_l"));
  m.def("correspondence", &correspondence, py::arg("structure"),
        py::arg("demand"), py::arg("cost"), py::arg("s_l"));
  m.def("iterate_dynamics", &iterate_dynamics, py::arg("demand"),
        py::arg("cost"), py::arg("s0"), py::arg("s_l"),
        py::arg("max_iter") = 10000, py::arg("tol") = 1e-10);
  m.def("agent_cutoff_check", &agent_cutoff_check, py::arg("demand"),
        py::arg("cost"), py::arg("s_star"), py::arg("s_l"),
        py::arg("n_samples") = 100000);

  py::class_<LeaderSolution>(m, "LeaderSolution")
      .def_readonly("s_l_star", &LeaderSolution::s_l_star)
      .def_readonly("regime", &LeaderSolution::regime)
      .def_readonly("profit", &LeaderSolution::profit)
      .def_readonly("total_supply", &LeaderSolution::total_supply)
      .def_readonly("boundary_hit", &LeaderSolution::boundary_hit);

  py::class_<ExpansionCondition>(m, "ExpansionCondition")
      .def_readonly("holds", &ExpansionCondition::holds)
      .def_readonly("margin", &ExpansionCondition::margin)
      .def_readonly("specified_value", &ExpansionCondition::specified_value);

  py::class_<DominanceCertificate>(m, "DominanceCertificate")
      .def_readonly("worst_margin", &DominanceCertificate::worst_margin)
      .def_readonly("worst_s_l", &DominanceCertificate::worst_s_l)
      .def_readonly("worst_realization",
                    &DominanceCertificate::worst_realization);

  py::class_<CapacitySolution>(m, "CapacitySolution")
      .def_readonly("s_l_star", &CapacitySolution::s_l_star)
      .def_readonly("regime", &CapacitySolution::regime)
      .def_readonly("profit", &CapacitySolution::profit)
      .def_readonly("total_supply", &CapacitySolution::total_supply)
      .def_readonly("optimistic_profit_at_k",
                    &CapacitySolution::optimistic_profit_at_k);

  m.def("leader_profit", &leader_profit, py::arg("demand"), py::arg("cost"),
        py::arg("s_l"), py::arg("s_star"));
  m.def("whole_market_profit", &whole_market_profit, py::arg("cost"),
        py::arg("s"));
  m.def("whole_market_profit_slope", &whole_market_profit_slope,
        py::arg("cost"), py::arg("s"));
  m.def("regime3_profit", &regime3_profit, py::arg("demand"), py::arg("cost"),
        py::arg("s_l"));
  m.def("regime3_slope", &regime3_slope, py::arg("demand"), py::arg("cost"),
        py::arg("s_l"));
  m.def("expansion_condition", &expansion_condition, py::arg("demand"),
        py::arg("structure"));
  m.def("solve", &solve, py::arg("demand"), py::arg("cost"),
        py::arg("structure"));
  m.def("verify_dominance", &verify_dominance, py::arg("demand"),
        py::arg("cost"), py::arg("structure"), py::arg("solution"),
        py::arg("grid_n") = 500);
  m.def("solve_with_capacity", &solve_with_capacity, py::arg("demand"),
        py::arg("cost"), py::arg("structure"), py::arg("k"));
  m.def("alt_fixed_points", &alt_fixed_points, py::arg("demand"),
        py::arg("cost"), py::arg("s_l"), py::arg("c_l"),
        py::arg("grid_n") = 100000, py::arg("tol") = 1e-10);
  m.def("alt_profit", &alt_profit, py::arg("demand"), py::arg("s_l"),
        py::arg("s_star"), py::arg("c_l"));

  py::class_<PlannerSolution>(m, "PlannerSolution")
      .def_readonly("s_fb", &PlannerSolution::s_fb)
      .def_readonly("boundary_hit", &PlannerSolution::boundary_hit)
      .def_readonly("foc_residual", &PlannerSolution::foc_residual);

  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("term_a", &Decomposition::term_a)
      .def_readonly("term_b", &Decomposition::term_b)
      .def_readonly("term_c", &Decomposition::term_c);

  py::class_<AltWelfare>(m, "AltWelfare")
      .def_readonly("welfare", &AltWelfare::welfare)
      .def_readonly("leader_efficient", &AltWelfare::leader_efficient)
      .def_readonly("leader_cost", &AltWelfare::leader_cost)
      .def_readonly("displaced_fringe_cost",
                    &AltWelfare::displaced_fringe_cost);

  m.def("gross_benefit", &gross_benefit, py::arg("demand"), py::arg("s"));
  m.def("welfare", &welfare, py::arg("demand"), py::arg("cost"), py::arg("s"));
  m.def("consumer_surplus", &consumer_surplus, py::arg("demand"),
        py::arg("s"));
  m.def("marginal_welfare", &marginal_welfare, py::arg("demand"),
        py::arg("cost"), py::arg("s"));
  m.def("externality_gap", &externality_gap, py::arg("demand"), py::arg("s"));
  m.def("planner_solve", &planner_solve, py::arg("demand"), py::arg("cost"));
  m.def("decompose", &decompose, py::arg("demand"), py::arg("cost"),
        py::arg("structure"));
  m.def("alt_welfare", &alt_welfare, py::arg("demand"), py::arg("cost"),
        py::arg("s_l"), py::arg("s"), py::arg("c_l"));

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("demand", &Scenario::demand)
      .def_readonly("cost", &Scenario::cost)
      .def_property_readonly("grid_n",
                             [](const Scenario& s) { return s.solver.grid_n; })
      .def_property_readonly("tol",
                             [](const Scenario& s) { return s.solver.tol; });

  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("run_report",
        [](const std::string& path) {
          const Scenario scenario = load_scenario(path);
          return pipeline_to_json(scenario, run_pipeline(scenario)).dump(2);
        },
        py::arg("path"),
        "Run the full pipeline on a scenario file and return the report "
        "document as a JSON string.");
}
