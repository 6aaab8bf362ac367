#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "invroot/interval.hpp"

namespace invroot {

using RealFunction = std::function<double(double)>;

enum class Monotonicity { kIncreasing, kDecreasing, kNotMonotone };

std::string_view to_string(Monotonicity m);

namespace numeric {

/// Limits for the adaptive Gauss-Kronrod integrator.
struct QuadratureLimits {
  int max_depth = 48;     // bisection depth of any single panel
  int max_panels = 4000;  // total panel budget
};

/// Oriented integral of f over [a, b] (integrate(f, a, b) == -integrate(f, b, a)).
///
/// Globally adaptive 7/15-point Gauss-Kronrod: the panel with the largest
/// |K15 - G7| estimate is bisected until the summed estimate is at most
/// abs_tol + rel_tol * |Q|. Panels whose estimate has reached the round-off
/// floor are retired rather than split further.
///
/// Throws Error(kEvaluationDomain) if f is non-finite at a node, and
/// ConvergenceError (carrying the current estimate) when the panel budget or
/// depth cap is exhausted above tolerance.
double integrate(const RealFunction& f, double a, double b, const Tolerance& tol = {},
                 const QuadratureLimits& limits = {});

/// Outcome of a bracketed root search.
struct BracketedRoot {
  double x = 0.0;
  double value = 0.0;  // g(x)
  int iterations = 0;
};

/// Root of g on [lo, hi] given g(lo) and g(hi) of opposite sign (or zero).
///
/// Each step tries the secant through the bracket ends and falls back to the
/// midpoint when the secant leaves the open bracket or when the previous step
/// failed to halve the bracket, so the width at least halves every two
/// evaluations. Stops when |g(x)| <= value_tol, g(x) == 0, or the bracket is
/// narrower than tol.scale(x).
///
/// With monotone_slack set, every new value must lie between the current
/// bracket values (widened by the slack); otherwise Error(kNotMonotone).
BracketedRoot find_bracketed_root(const RealFunction& g, double lo, double hi, double g_lo,
                                  double g_hi, const Tolerance& tol, double value_tol = 0.0,
                                  std::optional<double> monotone_slack = std::nullopt);

/// x in domain with f(x) == y, for strictly monotone f.
///
/// Endpoints are returned exactly when y equals an endpoint image. Throws
/// Error(kRange) when y lies outside [f(lo), f(hi)] (sorted) and
/// Error(kNotMonotone) when the sampled values contradict monotonicity.
double invert_monotone(const RealFunction& f, const Interval& domain, double y,
                       const Tolerance& tol = {});

/// Central difference with step scale * cbrt(machine epsilon).
double differentiate_numeric(const RealFunction& f, double x, double scale = 1.0);

/// As above, but the stencil is kept inside domain; near an endpoint a
/// second-order one-sided stencil is used instead.
double differentiate_numeric(const RealFunction& f, double x, double scale,
                             const Interval& domain);

/// Strict ordering of f at `samples` equispaced points, endpoints included.
Monotonicity check_monotone(const RealFunction& f, const Interval& domain, int samples = 257);

}  // namespace numeric
}  // namespace invroot
