#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "coordsolve/errors.hpp"

namespace coord::numeric {

// Refines a bracketed sign change of f on [a, b] down to width tol and
// returns the midpoint. Requires f(a) and f(b) on opposite sides of zero
// (either endpoint value may be exactly zero).
template <typename F>
double bisect(F&& f, double a, double b, double tol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw DomainError("bisect: sign change not bracketed");
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // interval at floating-point resolution
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Golden-section maximization of f on [a, b] to interval width tol.
// Assumes unimodality on the bracket; callers seed the bracket with a grid
// scan when the objective may have several local maxima.
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
    if (x2 <= x1) break;
  }
  return 0.5 * (a + b);
}

namespace detail {

template <typename F>
double simpson(F& f, double a, double fa, double b, double fb, double m,
               double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson with a depth cap; depth 20 bounds the
// subdivision at 2^20 intervals.
template <typename F>
double adapt(F& f, double a, double fa, double m, double fm, double b,
             double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol,
                 int max_depth = 20) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
  return detail::adapt(f, a, fa, m, fm, b, fb, whole, abs_tol, max_depth);
}

}  // namespace coord::numeric
