#pragma once

#include <variant>
#include <vector>

namespace coord {

struct Knot {
  double cost;
  double mass;
};

// Heterogeneous site-cost stock: CDF G on [0, c_bar] with positive interior
// density, its quantile, and the cumulative cost of the cheapest mass s,
//   int_0^{G^{-1}(s)} c g(c) dc.
// Three families: Uniform, Smoothstep (G = 3t^2 - 2t^3 with t = c/c_bar),
// and PiecewiseLinear over strictly increasing knots. PiecewiseLinear is
// only piecewise-C1; downstream solvers reject fixed points whose price
// lands on a kink. Immutable after construction; all operations pure.
class CostDistribution {
 public:
  enum class Kind { Uniform, Smoothstep, PiecewiseLinear };

  static CostDistribution uniform(double c_bar);
  static CostDistribution smoothstep(double c_bar);
  static CostDistribution piecewise_linear(std::vector<Knot> knots);

  Kind kind() const;
  double c_bar() const;

  // Total on the real line: 0 below support, 1 above.
  double cdf(double c) const;

  // Inverse CDF for s in [0, 1]; analytic for uniform and piecewise,
  // bisection for smoothstep.
  double quantile(double s) const;

  // Exact derivative of the CDF for c in the open support (0, c_bar).
  // At a piecewise knot returns the right-segment slope.
  double density(double c) const;

  // int_0^{quantile(s)} c g(c) dc for s in [0, 1]. Closed form for uniform
  // and piecewise; adaptive quadrature for smoothstep.
  double cumulative_cost(double s) const;

  // Distance from c to the nearest interior knot cost; +infinity for the
  // families without kinks.
  double knot_distance(double c) const;

  const std::vector<Knot>* piecewise_knots() const;

 private:
  struct Uniform {
    double c_bar;
  };
  struct Smoothstep {
    double c_bar;
  };
  struct PiecewiseLinear {
    std::vector<Knot> knots;
  };

  template <typename T>
  explicit CostDistribution(T d) : dist_(std::move(d)) {}

  std::variant<Uniform, Smoothstep, PiecewiseLinear> dist_;
};

}  // namespace coord
