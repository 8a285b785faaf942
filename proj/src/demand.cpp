#include "coordsolve/demand.hpp"

#include <cmath>

#include "coordsolve/errors.hpp"

namespace coord {

double SpecifiedLinearNetwork::price(double q, double s) const {
  const auto& p = params;
  return (p.q_max + p.gamma * std::pow(s, p.alpha) - q) / p.beta;
}

double SpecifiedLinearNetwork::dprice_dq(double, double) const {
  return -1.0 / params.beta;
}

double SpecifiedLinearNetwork::dprice_ds(double, double s) const {
  const auto& p = params;
  // alpha = 1 gives the constant gamma / beta; alpha > 1 vanishes at s = 0.
  return p.gamma * p.alpha * std::pow(s, p.alpha - 1.0) / p.beta;
}

double SpecifiedLinearNetwork::benefit(double s) const {
  const auto& p = params;
  return (p.q_max * s + p.gamma * std::pow(s, p.alpha + 1.0) - 0.5 * s * s) /
         p.beta;
}

double SpecifiedLinearNetwork::partial_benefit(double a, double b,
                                               double s) const {
  const auto& p = params;
  const double intercept = p.q_max + p.gamma * std::pow(s, p.alpha);
  return (intercept * (b - a) - 0.5 * (b * b - a * a)) / p.beta;
}

double SpecifiedLinearNetwork::supply_effect_integral(double s) const {
  const auto& p = params;
  return p.gamma * p.alpha * std::pow(s, p.alpha) / p.beta;
}

DemandModel DemandModel::specified_linear_network(const DemandParams& params) {
  if (!(params.q_max > 0.0))
    throw ValidationError("demand.q_max", "must be > 0");
  if (!(params.beta > 0.0)) throw ValidationError("demand.beta", "must be > 0");
  if (!(params.gamma > 0.0))
    throw ValidationError("demand.gamma", "must be > 0");
  if (!(params.alpha >= 1.0))
    throw ValidationError("demand.alpha", "must be >= 1");
  return DemandModel(SpecifiedLinearNetwork{params});
}

double DemandModel::price(double q, double s) const {
  return std::visit([&](const auto& m) { return m.price(q, s); }, model_);
}

double DemandModel::dprice_dq(double q, double s) const {
  return std::visit([&](const auto& m) { return m.dprice_dq(q, s); }, model_);
}

double DemandModel::dprice_ds(double q, double s) const {
  return std::visit([&](const auto& m) { return m.dprice_ds(q, s); }, model_);
}

double DemandModel::benefit(double s) const {
  return std::visit([&](const auto& m) { return m.benefit(s); }, model_);
}

double DemandModel::partial_benefit(double a, double b, double s) const {
  return std::visit(
      [&](const auto& m) { return m.partial_benefit(a, b, s); }, model_);
}

double DemandModel::supply_effect_integral(double s) const {
  return std::visit(
      [&](const auto& m) { return m.supply_effect_integral(s); }, model_);
}

DemandValidation DemandModel::validate(int grid_n) const {
  if (grid_n < 2) throw DomainError("validate: grid_n must be >= 2");
  const double step = 1.0 / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i) {
    const double q = i * step;
    for (int j = 0; j < grid_n; ++j) {
      const double s = j * step;
      const double dq = dprice_dq(q, s);
      if (!(dq < 0.0))
        return {false, DemandViolation{q, s, "dprice_dq", dq}};
      const double ds = dprice_ds(q, s);
      // At s = 0 the network derivative may legitimately vanish.
      if (ds < 0.0 || (s > 0.0 && !(ds > 0.0)))
        return {false, DemandViolation{q, s, "dprice_ds", ds}};
    }
  }
  return {true, std::nullopt};
}

const DemandParams* DemandModel::specified_params() const {
  if (const auto* m = std::get_if<SpecifiedLinearNetwork>(&model_))
    return &m->params;
  return nullptr;
}

}  // namespace coord
