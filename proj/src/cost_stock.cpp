#include "coordsolve/cost_stock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coordsolve/errors.hpp"
#include "coordsolve/numeric.hpp"

namespace coord {

namespace {

void check_mass_domain(double s, const char* op) {
  if (!(s >= 0.0 && s <= 1.0))
    throw DomainError(std::string(op) + ": mass " + std::to_string(s) +
                      " outside [0, 1]");
}

double smoothstep_cdf(double c, double c_bar) {
  if (c <= 0.0) return 0.0;
  if (c >= c_bar) return 1.0;
  const double t = c / c_bar;
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

CostDistribution CostDistribution::uniform(double c_bar) {
  if (!(c_bar > 0.0)) throw ValidationError("cost.c_bar", "must be > 0");
  return CostDistribution(Uniform{c_bar});
}

CostDistribution CostDistribution::smoothstep(double c_bar) {
  if (!(c_bar > 0.0)) throw ValidationError("cost.c_bar", "must be > 0");
  return CostDistribution(Smoothstep{c_bar});
}

CostDistribution CostDistribution::piecewise_linear(std::vector<Knot> knots) {
  if (knots.size() < 2)
    throw ValidationError("cost.knots", "need at least two knots");
  if (knots.front().cost != 0.0 || knots.front().mass != 0.0)
    throw ValidationError("cost.knots[0]", "first knot must be (0, 0)");
  if (knots.back().mass != 1.0)
    throw ValidationError("cost.knots[" + std::to_string(knots.size() - 1) +
                              "]",
                          "last knot mass must be 1");
  if (!(knots.back().cost > 0.0))
    throw ValidationError("cost.knots[" + std::to_string(knots.size() - 1) +
                              "]",
                          "c_bar must be > 0");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const std::string path = "cost.knots[" + std::to_string(i) + "]";
    if (!(knots[i].cost > knots[i - 1].cost))
      throw ValidationError(path, "costs must be strictly increasing");
    if (!(knots[i].mass > knots[i - 1].mass))
      throw ValidationError(path,
                            "masses must be strictly increasing (g > 0)");
  }
  return CostDistribution(PiecewiseLinear{std::move(knots)});
}

CostDistribution::Kind CostDistribution::kind() const {
  return std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform>)
          return Kind::Uniform;
        else if constexpr (std::is_same_v<T, Smoothstep>)
          return Kind::Smoothstep;
        else
          return Kind::PiecewiseLinear;
      },
      dist_);
}

double CostDistribution::c_bar() const {
  return std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PiecewiseLinear>)
          return d.knots.back().cost;
        else
          return d.c_bar;
      },
      dist_);
}

double CostDistribution::cdf(double c) const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (c <= 0.0) return 0.0;
          if (c >= d.c_bar) return 1.0;
          return c / d.c_bar;
        } else if constexpr (std::is_same_v<T, Smoothstep>) {
          return smoothstep_cdf(c, d.c_bar);
        } else {
          const auto& k = d.knots;
          if (c <= 0.0) return 0.0;
          if (c >= k.back().cost) return 1.0;
          auto it = std::upper_bound(
              k.begin(), k.end(), c,
              [](double v, const Knot& kn) { return v < kn.cost; });
          const Knot& hi = *it;
          const Knot& lo = *(it - 1);
          return lo.mass +
                 (hi.mass - lo.mass) * (c - lo.cost) / (hi.cost - lo.cost);
        }
      },
      dist_);
}

double CostDistribution::quantile(double s) const {
  check_mass_domain(s, "quantile");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return s * d.c_bar;
        } else if constexpr (std::is_same_v<T, Smoothstep>) {
          if (s == 0.0) return 0.0;
          if (s == 1.0) return d.c_bar;
          double lo = 0.0, hi = d.c_bar;
          // 64 halvings take the bracket far below the 1e-12 contract.
          for (int i = 0; i < 64 && hi - lo > 1e-15 * d.c_bar; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (smoothstep_cdf(mid, d.c_bar) < s)
              lo = mid;
            else
              hi = mid;
          }
          return 0.5 * (lo + hi);
        } else {
          const auto& k = d.knots;
          if (s == 0.0) return 0.0;
          if (s == 1.0) return k.back().cost;
          auto it = std::lower_bound(
              k.begin(), k.end(), s,
              [](const Knot& kn, double v) { return kn.mass < v; });
          const Knot& hi = *it;
          const Knot& lo = *(it - 1);
          return lo.cost +
                 (hi.cost - lo.cost) * (s - lo.mass) / (hi.mass - lo.mass);
        }
      },
      dist_);
}

double CostDistribution::density(double c) const {
  const double cb = c_bar();
  if (!(c > 0.0 && c < cb))
    throw DomainError("density: cost " + std::to_string(c) +
                      " outside the open support (0, " + std::to_string(cb) +
                      ")");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return 1.0 / d.c_bar;
        } else if constexpr (std::is_same_v<T, Smoothstep>) {
          const double t = c / d.c_bar;
          return 6.0 * t * (1.0 - t) / d.c_bar;
        } else {
          const auto& k = d.knots;
          // upper_bound makes a knot cost fall in its right segment.
          auto it = std::upper_bound(
              k.begin(), k.end(), c,
              [](double v, const Knot& kn) { return v < kn.cost; });
          const Knot& hi = *it;
          const Knot& lo = *(it - 1);
          return (hi.mass - lo.mass) / (hi.cost - lo.cost);
        }
      },
      dist_);
}

double CostDistribution::cumulative_cost(double s) const {
  check_mass_domain(s, "cumulative_cost");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return 0.5 * s * s * d.c_bar;
        } else if constexpr (std::is_same_v<T, Smoothstep>) {
          const double upper = quantile(s);
          const double cb = d.c_bar;
          return numeric::integrate(
              [cb](double c) {
                const double t = c / cb;
                return c * 6.0 * t * (1.0 - t) / cb;
              },
              0.0, upper, 1e-10);
        } else {
          const auto& k = d.knots;
          const double upper = quantile(s);
          double total = 0.0;
          for (std::size_t i = 1; i < k.size(); ++i) {
            const double lo = k[i - 1].cost;
            if (upper <= lo) break;
            const double hi = std::min(upper, k[i].cost);
            const double slope =
                (k[i].mass - k[i - 1].mass) / (k[i].cost - k[i - 1].cost);
            total += 0.5 * slope * (hi * hi - lo * lo);
          }
          return total;
        }
      },
      dist_);
}

double CostDistribution::knot_distance(double c) const {
  const auto* knots = piecewise_knots();
  if (knots == nullptr) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < knots->size(); ++i)
    best = std::min(best, std::abs(c - (*knots)[i].cost));
  return best;
}

const std::vector<Knot>* CostDistribution::piecewise_knots() const {
  if (const auto* d = std::get_if<PiecewiseLinear>(&dist_)) return &d->knots;
  return nullptr;
}

}  // namespace coord
