#pragma once

#include <stdexcept>
#include <string>

namespace coord {

// Base class for everything thrown by this library. Subclasses partition
// into the three CLI failure classes: input/validation problems,
// multiplicity (Assumption-3) failures, and numerical failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Scenario document is not well-formed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A field violates a type invariant; carries the offending field path
// (e.g. "demand.gamma", "cost.knots[3]").
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// A demand derivative had the wrong sign somewhere on the validation grid.
class AssumptionViolation : public Error {
 public:
  AssumptionViolation(double q, double s, const std::string& message)
      : Error(message + " at (q=" + std::to_string(q) +
              ", s=" + std::to_string(s) + ")"),
        q_(q),
        s_(s) {}
  double q() const { return q_; }
  double s() const { return s_; }

 private:
  double q_, s_;
};

// A fixed point is tangent to the 45-degree line, sits on a cost-CDF kink,
// or two roots coincide to within resolution. Never silently classified.
class Degenerate : public Error {
 public:
  Degenerate(double supply, double slope, const std::string& message)
      : Error(message + " (supply=" + std::to_string(supply) +
              ", slope=" + std::to_string(slope) + ")"),
        supply_(supply),
        slope_(slope) {}
  double supply() const { return supply_; }
  double slope() const { return slope_; }

 private:
  double supply_, slope_;
};

// The fixed-point pattern is not [stable, unstable, stable].
class NoMultiplicity : public Error {
 public:
  explicit NoMultiplicity(int stable_count)
      : Error("expected exactly two stable fixed points, found " +
              std::to_string(stable_count)),
        stable_count_(stable_count) {}
  int stable_count() const { return stable_count_; }

 private:
  int stable_count_;
};

// Iteration budget exhausted; carries the last two iterates.
class NonConvergence : public Error {
 public:
  NonConvergence(double last, double previous, int iterations)
      : Error("no convergence after " + std::to_string(iterations) +
              " iterations (last=" + std::to_string(last) +
              ", previous=" + std::to_string(previous) + ")"),
        last_(last),
        previous_(previous),
        iterations_(iterations) {}
  double last() const { return last_; }
  double previous() const { return previous_; }
  int iterations() const { return iterations_; }

 private:
  double last_, previous_;
  int iterations_;
};

// A cross-module consistency assertion failed; signals a solver bug or a
// mis-validated equilibrium structure, not bad user input.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

// A deviation beat the claimed optimum in the dominance check.
class CertificateFailure : public Error {
 public:
  CertificateFailure(double s_l, double realization, double margin)
      : Error("dominance violated at deviation s_l=" + std::to_string(s_l) +
              " with realization " + std::to_string(realization) +
              " (margin=" + std::to_string(margin) + ")"),
        s_l_(s_l),
        realization_(realization),
        margin_(margin) {}
  double s_l() const { return s_l_; }
  double realization() const { return realization_; }
  double margin() const { return margin_; }

 private:
  double s_l_, realization_, margin_;
};

// The welfare ordering across outcomes failed beyond tolerance.
class OrderingViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace coord
