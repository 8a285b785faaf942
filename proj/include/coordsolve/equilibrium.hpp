#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coordsolve/cost_stock.hpp"
#include "coordsolve/demand.hpp"

namespace coord {

enum class Stability { Stable, Unstable, CornerStable };

const char* to_string(Stability s);

// A fixed point of the response map with its stability classification.
// Interior points satisfy |response(S) - S| <= 2 tol; a CornerStable point
// sits at the upper boundary with the response pinned at or above the line.
struct FixedPoint {
  double supply;
  Stability kind;
  double slope;  // d/dS G(P(S,S)) at the point; 0 where the price is clamped
};

// The Assumption-3 triple: low stable, threshold unstable, high stable
// (possibly a corner at the top of the stock).
struct EquilibriumStructure {
  FixedPoint s_low;
  FixedPoint s_unstable;
  FixedPoint s_high;
};

// The four bands of the leader's commitment.
enum class Regime { I, Intermediate, II, III };

const char* to_string(Regime r);

enum class OutcomeTag { LowInterior, HighInterior, CornerTrap, LeaderOnly };

const char* to_string(OutcomeTag t);

struct Outcome {
  double supply;
  OutcomeTag tag;
};

// Stable continuation set E(s_l), ordered by supply.
struct Correspondence {
  std::vector<Outcome> outcomes;
};

struct Dynamics {
  std::vector<double> trajectory;  // includes the start and the limit
  double limit;
  int iterations;
};

struct CutoffFalsifier {
  double mass;
  double cost;
  double price;
  double profit_if_build;
};

struct CutoffCheck {
  bool pass;
  double implied_entrant_mass;
  double expected_entrant_mass;
  std::optional<CutoffFalsifier> falsifier;
};

// Mass of sites profitable at total supply s: G(clamp(P(s,s), 0, c_bar)).
double response(const DemandModel& demand, const CostDistribution& cost,
                double s);

// Brackets every sign change of response(S) - S on a uniform grid of
// grid_n + 1 points over [0, 1], refines each bracket by bisection to width
// tol, and classifies each root by the analytic slope
// g(P(S,S)) * (dP/dq + dP/ds). Appends a CornerStable point at S = 1 when
// the response sits at or above the 45-degree line there. Roots tangent to
// the line (|slope - 1| <= 1e-6), closer together than 10 tol, or priced on
// a piecewise kink raise Degenerate.
std::vector<FixedPoint> find_fixed_points(const DemandModel& demand,
                                          const CostDistribution& cost,
                                          long long grid_n, double tol);

// Accepts exactly the pattern [Stable, Unstable, Stable-or-CornerStable];
// anything else raises NoMultiplicity with the observed stable count.
EquilibriumStructure validate_multiplicity(
    const std::vector<FixedPoint>& points);

Regime regime_of(const EquilibriumStructure& structure, double s_l);

// The equilibrium correspondence E(s_l) across the four regimes. In the
// intermediate band the corner condition G(P(s_l, s_l)) < s_l is asserted;
// failure means the structure was mis-validated.
Correspondence correspondence(const EquilibriumStructure& structure,
                              const DemandModel& demand,
                              const CostDistribution& cost, double s_l);

// Damped best-response adjustment S <- max(s_l, S + 0.5 (response(S) - S))
// from s0: a discrete tatonnement whose limits are exactly the stable
// points of the response map. A verification oracle for the stability
// basins, not a model of sequential entry.
Dynamics iterate_dynamics(const DemandModel& demand,
                          const CostDistribution& cost, double s0, double s_l,
                          int max_iter, double tol);

// Samples n_samples developer costs at midpoint masses in (s_l, 1] and
// checks that the cutoff rule (build iff cost <= P(s_star, s_star)) is
// individually optimal for every sample and that the implied entrant mass
// matches s_star - s_l to within 1 / n_samples.
CutoffCheck agent_cutoff_check(const DemandModel& demand,
                               const CostDistribution& cost, double s_star,
                               double s_l, long long n_samples);

namespace detail {

// Slope of the response map at s; 0 where the price falls outside the cost
// support (the response is flat there).
double response_slope(const DemandModel& demand, const CostDistribution& cost,
                      double s);

// Shared scanner for the baseline map (offset 0 on [0, 1]) and the
// alternative-technology map (offset s_l on [0, s_l + 1]).
std::vector<FixedPoint> scan_fixed_points(const DemandModel& demand,
                                          const CostDistribution& cost,
                                          double offset, long long grid_n,
                                          double tol);

}  // namespace detail

}  // namespace coord
