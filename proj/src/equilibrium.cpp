#include "coordsolve/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "coordsolve/errors.hpp"
#include "coordsolve/numeric.hpp"

namespace coord {

namespace {

constexpr double kSlopeTol = 1e-6;   // |slope - 1| band treated as tangent
constexpr double kKnotTol = 1e-9;    // price-to-kink distance treated as on-knot

double clamp_price(double p, double c_bar) {
  return std::clamp(p, 0.0, c_bar);
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::Unstable:
      return "unstable";
    case Stability::CornerStable:
      return "corner_stable";
  }
  return "?";
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::I:
      return "I";
    case Regime::Intermediate:
      return "intermediate";
    case Regime::II:
      return "II";
    case Regime::III:
      return "III";
  }
  return "?";
}

const char* to_string(OutcomeTag t) {
  switch (t) {
    case OutcomeTag::LowInterior:
      return "low_interior";
    case OutcomeTag::HighInterior:
      return "high_interior";
    case OutcomeTag::CornerTrap:
      return "corner_trap";
    case OutcomeTag::LeaderOnly:
      return "leader_only";
  }
  return "?";
}

double response(const DemandModel& demand, const CostDistribution& cost,
                double s) {
  return cost.cdf(clamp_price(demand.price(s, s), cost.c_bar()));
}

namespace detail {

double response_slope(const DemandModel& demand, const CostDistribution& cost,
                      double s) {
  const double p = demand.price(s, s);
  if (p <= 0.0 || p >= cost.c_bar()) return 0.0;
  return cost.density(p) * (demand.dprice_dq(s, s) + demand.dprice_ds(s, s));
}

std::vector<FixedPoint> scan_fixed_points(const DemandModel& demand,
                                          const CostDistribution& cost,
                                          double offset, long long grid_n,
                                          double tol) {
  if (grid_n < 100) throw DomainError("find_fixed_points: grid_n must be >= 100");
  if (!(tol > 0.0)) throw DomainError("find_fixed_points: tol must be > 0");

  const double hi_end = offset + 1.0;
  const auto excess = [&](double s) {
    return offset + response(demand, cost, s) - s;
  };

  const auto classify = [&](double s) -> FixedPoint {
    const double p = demand.price(s, s);
    const double clamped = clamp_price(p, cost.c_bar());
    if (cost.knot_distance(clamped) <= kKnotTol)
      throw Degenerate(s, 0.0,
                       "fixed point price lies on a cost-CDF kink; "
                       "stability is ambiguous");
    const double slope = response_slope(demand, cost, s);
    if (std::abs(slope - 1.0) <= kSlopeTol)
      throw Degenerate(s, slope, "fixed point tangent to the 45-degree line");
    return {s, slope < 1.0 ? Stability::Stable : Stability::Unstable, slope};
  };

  std::vector<FixedPoint> points;
  const double step = hi_end / static_cast<double>(grid_n);
  double prev_s = 0.0;
  double prev_e = excess(prev_s);
  if (prev_e == 0.0) points.push_back(classify(0.0));
  for (long long i = 1; i <= grid_n; ++i) {
    const double s = (i == grid_n) ? hi_end : i * step;
    const double e = excess(s);
    if (e == 0.0) {
      if (i < grid_n) points.push_back(classify(s));
    } else if ((prev_e > 0.0) != (e > 0.0) && prev_e != 0.0) {
      const double root = numeric::bisect(excess, prev_s, s, tol);
      points.push_back(classify(root));
    }
    prev_s = s;
    prev_e = e;
  }

  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].supply - points[i - 1].supply < 10.0 * tol)
      throw Degenerate(points[i].supply, points[i].slope,
                       "two fixed points within resolution; possible tangency");

  // Response pinned at or above the line at the top of the stock.
  if (excess(hi_end) >= 0.0)
    points.push_back({hi_end, Stability::CornerStable,
                      response_slope(demand, cost, hi_end)});

  return points;
}

}  // namespace detail

std::vector<FixedPoint> find_fixed_points(const DemandModel& demand,
                                          const CostDistribution& cost,
                                          long long grid_n, double tol) {
  return detail::scan_fixed_points(demand, cost, 0.0, grid_n, tol);
}

EquilibriumStructure validate_multiplicity(
    const std::vector<FixedPoint>& points) {
  int stable = 0;
  for (const auto& p : points)
    if (p.kind != Stability::Unstable) ++stable;
  const bool pattern_ok =
      points.size() == 3 && points[0].kind == Stability::Stable &&
      points[1].kind == Stability::Unstable &&
      points[2].kind != Stability::Unstable &&
      points[0].supply < points[1].supply &&
      points[1].supply < points[2].supply;
  if (!pattern_ok) throw NoMultiplicity(stable);
  return {points[0], points[1], points[2]};
}

Regime regime_of(const EquilibriumStructure& structure, double s_l) {
  // Ties resolved exactly as the regime table prints them: row 1 closed at
  // s_low, row 3 closed at both ends.
  if (s_l <= structure.s_low.supply) return Regime::I;
  if (s_l < structure.s_unstable.supply) return Regime::Intermediate;
  if (s_l <= structure.s_high.supply) return Regime::II;
  return Regime::III;
}

Correspondence correspondence(const EquilibriumStructure& structure,
                              const DemandModel& demand,
                              const CostDistribution& cost, double s_l) {
  if (!(s_l >= 0.0 && s_l <= 1.0))
    throw DomainError("correspondence: s_l outside [0, 1]");
  switch (regime_of(structure, s_l)) {
    case Regime::I:
      return {{{structure.s_low.supply, OutcomeTag::LowInterior},
               {structure.s_high.supply, OutcomeTag::HighInterior}}};
    case Regime::Intermediate: {
      // Zero entry is self-confirming only if the response sits strictly
      // below the line at s_l.
      if (!(response(demand, cost, s_l) < s_l))
        throw InternalInconsistency(
            "corner condition G(P(s_l, s_l)) < s_l failed in the "
            "intermediate regime; structure was mis-validated");
      return {{{s_l, OutcomeTag::CornerTrap},
               {structure.s_high.supply, OutcomeTag::HighInterior}}};
    }
    case Regime::II:
      return {{{structure.s_high.supply, OutcomeTag::HighInterior}}};
    case Regime::III:
      return {{{s_l, OutcomeTag::LeaderOnly}}};
  }
  throw InternalInconsistency("unreachable regime");
}

Dynamics iterate_dynamics(const DemandModel& demand,
                          const CostDistribution& cost, double s0, double s_l,
                          int max_iter, double tol) {
  if (!(s0 >= 0.0 && s0 <= 1.0))
    throw DomainError("iterate_dynamics: s0 outside [0, 1]");
  // Damped adjustment realizes the tatonnement story behind the stability
  // criterion: excess response creates upward pressure, deficit downward.
  // Undamped replacement S <- response(S) would 2-cycle around any stable
  // point with slope below -1 (the canonical low point sits at -1.65); the
  // damped map contracts at every crossing-from-above point with slope
  // above 1 - 2/lambda and still repels from crossings from below.
  constexpr double kDamping = 0.5;
  Dynamics dyn;
  dyn.trajectory.push_back(s0);
  double s = s0;
  for (int i = 1; i <= max_iter; ++i) {
    const double pressure = response(demand, cost, s) - s;
    const double next = std::max(s_l, s + kDamping * pressure);
    dyn.trajectory.push_back(next);
    if (std::abs(next - s) < tol) {
      dyn.limit = next;
      dyn.iterations = i;
      return dyn;
    }
    s = next;
  }
  throw NonConvergence(dyn.trajectory.back(),
                       dyn.trajectory[dyn.trajectory.size() - 2], max_iter);
}

CutoffCheck agent_cutoff_check(const DemandModel& demand,
                               const CostDistribution& cost, double s_star,
                               double s_l, long long n_samples) {
  if (n_samples < 1)
    throw DomainError("agent_cutoff_check: n_samples must be >= 1");
  if (!(s_l >= 0.0 && s_l <= s_star && s_star <= 1.0))
    throw DomainError("agent_cutoff_check: need 0 <= s_l <= s_star <= 1");

  const double p_star = demand.price(s_star, s_star);
  const double span = 1.0 - s_l;
  long long builders = 0;
  for (long long i = 0; i < n_samples; ++i) {
    const double u = s_l + (i + 0.5) * span / n_samples;
    const double c = cost.quantile(u);
    // Under the cutoff rule a builder earns p* - c >= 0 and a non-builder
    // would earn p* - c < 0; both hold by construction, so the substantive
    // check is aggregate consistency below.
    if (c <= p_star) ++builders;
  }

  CutoffCheck check;
  check.implied_entrant_mass = builders * span / n_samples;
  check.expected_entrant_mass = s_star - s_l;
  const double discrepancy =
      std::abs(check.implied_entrant_mass - check.expected_entrant_mass);
  check.pass = discrepancy <= 1.0 / static_cast<double>(n_samples);
  if (!check.pass) {
    // The marginal sampled developer contradicting the claimed outcome:
    // if too few entrants, the cheapest refusal would have to build at a
    // loss for s_star to be reached; if too many, a builder at the margin
    // would be displaced.
    const double u = std::clamp(
        check.implied_entrant_mass < check.expected_entrant_mass
            ? cost.cdf(p_star) + 0.5 / n_samples
            : cost.cdf(p_star) - 0.5 / n_samples,
        s_l, 1.0);
    const double c = cost.quantile(u);
    check.falsifier = CutoffFalsifier{u, c, p_star, p_star - c};
  }
  return check;
}

}  // namespace coord
