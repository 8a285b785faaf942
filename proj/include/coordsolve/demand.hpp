#pragma once

#include <optional>
#include <string>
#include <variant>

namespace coord {

// Parameters of the linear-in-quantity inverse demand family with a
// power-law network term.
struct DemandParams {
  double q_max;  // demand intercept, units of quantity
  double beta;   // price sensitivity, quantity per price unit
  double gamma;  // network-effect strength
  double alpha;  // convexity of network benefits, >= 1
};

// P(q, s) = (q_max + gamma * s^alpha - q) / beta.
struct SpecifiedLinearNetwork {
  DemandParams params;

  double price(double q, double s) const;
  double dprice_dq(double q, double s) const;
  double dprice_ds(double q, double s) const;
  // int_0^s P(q, s) dq at fixed supply s.
  double benefit(double s) const;
  // int_a^b P(q, s) dq at fixed supply s.
  double partial_benefit(double a, double b, double s) const;
  // int_0^s dP/dS(q, s) dq; the integrand is constant in q for this family.
  double supply_effect_integral(double s) const;
};

struct DemandViolation {
  double q;
  double s;
  std::string derivative;  // "dprice_dq" or "dprice_ds"
  double value;
};

struct DemandValidation {
  bool pass;
  std::optional<DemandViolation> violation;
};

// Closed set of inverse-demand families. Every variant supplies the price,
// the quantity slope, the supply derivative, and the two closed-form
// integrals the welfare computations build on. Models are immutable after
// construction; all operations are pure and safe to call concurrently.
class DemandModel {
 public:
  static DemandModel specified_linear_network(const DemandParams& params);

  // Raw inverse demand; may be negative mid-range. Callers needing a price
  // composable with the cost CDF clamp to [0, c_bar] themselves.
  double price(double q, double s) const;
  double dprice_dq(double q, double s) const;
  double dprice_ds(double q, double s) const;

  double benefit(double s) const;
  double partial_benefit(double a, double b, double s) const;
  double supply_effect_integral(double s) const;

  // Checks the demand-structure signs (dP/dq < 0 everywhere, dP/ds >= 0
  // with strict inequality for s > 0) on a grid_n x grid_n lattice over
  // [0,1]^2. Reports the first violating point, if any.
  DemandValidation validate(int grid_n) const;

  // Non-null when the model is the specified linear-network family; used
  // where the caller wants the family's closed-form threshold expressions.
  const DemandParams* specified_params() const;

 private:
  explicit DemandModel(SpecifiedLinearNetwork m) : model_(std::move(m)) {}
  std::variant<SpecifiedLinearNetwork> model_;
};

}  // namespace coord
