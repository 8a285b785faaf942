#include <doctest.h>

#include "coordsolve/demand.hpp"
#include "coordsolve/errors.hpp"
#include "support/corpus.hpp"

using namespace coord;
using coord::testing::Rng01;
using coord::testing::central_diff;
using coord::testing::oracle_integrate;

TEST_CASE("price evaluates the specified form exactly") {
  const auto m = DemandModel::specified_linear_network({1.0, 2.0, 0.5, 2.0});
  CHECK(m.price(0.0, 0.0) == 0.5);
  CHECK(m.price(1.0, 1.0) == 0.25);
  const auto c = testing::canonical_demand();
  CHECK(c.price(0.5, 0.5) == doctest::Approx(0.275).epsilon(1e-15));
}

TEST_CASE("price may be negative mid-range; no clamping here") {
  const auto m = DemandModel::specified_linear_network({0.05, 1.0, 0.1, 2.0});
  CHECK(m.price(0.5, 0.5) < 0.0);
}

TEST_CASE("quantity slope is the constant -1/beta") {
  const auto m2 = DemandModel::specified_linear_network({1.0, 2.0, 0.5, 2.0});
  CHECK(m2.dprice_dq(0.1, 0.9) == -0.5);
  CHECK(m2.dprice_dq(0.9, 0.1) == -0.5);
  const auto m1 = DemandModel::specified_linear_network({1.0, 1.0, 0.5, 2.0});
  CHECK(m1.dprice_dq(0.3, 0.3) == -1.0);

  const double fd = central_diff(
      [&](double q) { return m2.price(q, 0.7); }, 0.3);
  CHECK(std::abs(fd - m2.dprice_dq(0.3, 0.7)) < 1e-8);
}

TEST_CASE("supply derivative gamma*alpha*s^(alpha-1)/beta") {
  const auto m = DemandModel::specified_linear_network({1.0, 1.0, 1.5, 2.0});
  CHECK(m.dprice_ds(0.2, 0.0) == 0.0);
  CHECK(m.dprice_ds(0.2, 0.931) == doctest::Approx(2.793).epsilon(1e-12));

  const double fd = central_diff(
      [&](double s) { return m.price(0.2, s); }, 0.6);
  CHECK(std::abs(fd - m.dprice_ds(0.2, 0.6)) < 1e-8);

  // alpha = 1: constant network effect gamma/beta, nonzero at s = 0.
  const auto lin = DemandModel::specified_linear_network({1.0, 2.0, 0.8, 1.0});
  CHECK(lin.dprice_ds(0.0, 0.0) == 0.4);
}

TEST_CASE("derivatives match central differences at random interior points") {
  const auto m = testing::canonical_demand();
  Rng01 rng(20240811);
  for (int i = 0; i < 100; ++i) {
    const double q = 0.01 + 0.98 * rng.next();
    const double s = 0.01 + 0.98 * rng.next();
    const double fdq =
        central_diff([&](double x) { return m.price(x, s); }, q);
    const double fds =
        central_diff([&](double x) { return m.price(q, x); }, s);
    CHECK(std::abs(fdq - m.dprice_dq(q, s)) < 1e-6);
    CHECK(std::abs(fds - m.dprice_ds(q, s)) < 1e-6);
  }
}

TEST_CASE("price is linear in q at fixed s") {
  const auto m = testing::canonical_demand();
  Rng01 rng(7);
  for (int i = 0; i < 50; ++i) {
    const double q1 = rng.next(), q2 = rng.next(), s = rng.next();
    CHECK(m.price(q1, s) - m.price(q2, s) ==
          doctest::Approx((q2 - q1) / 1.0).epsilon(1e-13));
  }
}

TEST_CASE("validate passes on the grid and is grid-size independent") {
  const auto m = DemandModel::specified_linear_network({1.0, 2.0, 0.5, 2.0});
  for (int n : {10, 100, 1000}) {
    const auto report = m.validate(n);
    CHECK(report.pass);
    CHECK(!report.violation.has_value());
  }
  CHECK_THROWS_AS(m.validate(1), DomainError);
}

TEST_CASE("constructor rejects invalid parameters with field paths") {
  CHECK_THROWS_AS(DemandModel::specified_linear_network({1, 1, -1, 2}),
                  ValidationError);
  try {
    DemandModel::specified_linear_network({1, 1, -1, 2});
  } catch (const ValidationError& e) {
    CHECK(e.field() == "demand.gamma");
  }
  CHECK_THROWS_AS(DemandModel::specified_linear_network({0, 1, 1, 2}),
                  ValidationError);
  CHECK_THROWS_AS(DemandModel::specified_linear_network({1, 0, 1, 2}),
                  ValidationError);
  CHECK_THROWS_AS(DemandModel::specified_linear_network({1, 1, 1, 0.5}),
                  ValidationError);
  // alpha = 1 is allowed; multiplicity is validated downstream, not here.
  CHECK_NOTHROW(DemandModel::specified_linear_network({1, 1, 1, 1}));
}

TEST_CASE("signs hold everywhere on [0,1]^2") {
  const auto m = testing::canonical_demand();
  Rng01 rng(99);
  for (int i = 0; i < 200; ++i) {
    const double q = rng.next();
    const double s = rng.next();
    CHECK(m.dprice_dq(q, s) < 0.0);
    CHECK(m.dprice_ds(q, s) >= 0.0);
    if (s > 0.0) CHECK(m.dprice_ds(q, s) > 0.0);
  }
}

TEST_CASE("closed-form benefit integrals agree with quadrature") {
  const auto m = testing::canonical_demand();
  for (int i = 1; i <= 50; ++i) {
    const double s = i / 50.0;
    const double quad =
        oracle_integrate([&](double q) { return m.price(q, s); }, 0.0, s);
    CHECK(std::abs(m.benefit(s) - quad) < 1e-9);
    const double gap_quad = oracle_integrate(
        [&](double q) { return m.dprice_ds(q, s); }, 0.0, s);
    CHECK(std::abs(m.supply_effect_integral(s) - gap_quad) < 1e-9);
    // gamma * alpha * s^alpha / beta = 3 s^2 for the canonical parameters
    CHECK(std::abs(m.supply_effect_integral(s) - 3.0 * s * s) < 1e-10);
  }
}

TEST_CASE("partial benefit splits additively") {
  const auto m = testing::canonical_demand();
  const double whole = m.partial_benefit(0.0, 0.9, 0.7);
  const double split =
      m.partial_benefit(0.0, 0.4, 0.7) + m.partial_benefit(0.4, 0.9, 0.7);
  CHECK(whole == doctest::Approx(split).epsilon(1e-14));
}
