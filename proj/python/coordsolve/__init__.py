"""Python bindings for the coordsolve housing-coordination game solver."""

from ._core import (  # noqa: F401
    AltWelfare,
    AssumptionViolation,
    CapacitySolution,
    CertificateFailureError,
    Correspondence,
    CostDistribution,
    CutoffCheck,
    Decomposition,
    DegenerateError,
    DemandModel,
    DemandParams,
    DomainError,
    DominanceCertificate,
    Dynamics,
    EquilibriumStructure,
    ExpansionCondition,
    FixedPoint,
    InternalInconsistencyError,
    Knot,
    LeaderSolution,
    NoMultiplicityError,
    NonConvergenceError,
    OrderingViolationError,
    Outcome,
    OutcomeTag,
    ParseError,
    PlannerSolution,
    Regime,
    Scenario,
    ScenarioValidationError,
    Stability,
    agent_cutoff_check,
    alt_fixed_points,
    alt_profit,
    alt_welfare,
    consumer_surplus,
    correspondence,
    decompose,
    expansion_condition,
    externality_gap,
    find_fixed_points,
    gross_benefit,
    iterate_dynamics,
    leader_profit,
    load_scenario,
    marginal_welfare,
    planner_solve,
    regime3_profit,
    regime3_slope,
    regime_of,
    response,
    run_report,
    solve,
    solve_with_capacity,
    validate_multiplicity,
    verify_dominance,
    welfare,
    whole_market_profit,
    whole_market_profit_slope,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
