#include "invroot/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "invroot/error.hpp"

namespace invroot {

std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::kIncreasing: return "increasing";
    case Monotonicity::kDecreasing: return "decreasing";
    case Monotonicity::kNotMonotone: return "not-monotone";
  }
  return "unknown";
}

namespace numeric {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae on [-1, 1]; odd indices are the 7 Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double roundoff = 0.0;
  int depth = 0;

  bool operator<(const Panel& other) const { return error < other.error; }
};

double checked_eval(const RealFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::kEvaluationDomain,
                fmt::format("non-finite function value {} at x = {:.17g}", v, x));
  }
  return v;
}

Panel gauss_kronrod(const RealFunction& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = checked_eval(f, center);

  double kronrod = kKronrodWeights[7] * f_center;
  double gauss = kGaussWeights[3] * f_center;
  double abs_sum = kKronrodWeights[7] * std::abs(f_center);

  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = checked_eval(f, center - dx);
    const double f2 = checked_eval(f, center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }

  Panel p;
  p.a = a;
  p.b = b;
  p.depth = depth;
  p.value = kronrod * half;
  p.error = std::abs((kronrod - gauss) * half);
  p.roundoff = 50.0 * kEps * abs_sum * std::abs(half);
  return p;
}

}  // namespace

double integrate(const RealFunction& f, double a, double b, const Tolerance& tol,
                 const QuadratureLimits& limits) {
  tol.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("integration limits must be finite, got [{}, {}]", a, b));
  }
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol, limits);

  // Max-heap on error estimate; retired panels are final.
  std::vector<Panel> active{gauss_kronrod(f, a, b, 0)};
  std::vector<Panel> retired;
  int panels = 1;

  while (true) {
    double value = 0.0;
    double error = 0.0;
    for (const Panel& p : active) {
      value += p.value;
      error += p.error;
    }
    for (const Panel& p : retired) {
      value += p.value;
      error += p.error;
    }
    if (error <= tol.scale(value)) return value;

    while (!active.empty() && active.front().error <= active.front().roundoff) {
      std::pop_heap(active.begin(), active.end());
      retired.push_back(active.back());
      active.pop_back();
    }
    if (active.empty()) {
      // Only round-off-limited panels remain: the estimate is as good as doubles allow.
      return value;
    }

    const Panel worst = active.front();
    if (worst.depth >= limits.max_depth) {
      throw ConvergenceError(
          fmt::format("quadrature depth cap {} reached near [{:.17g}, {:.17g}] "
                      "(estimate {:.17g}, error {:.3g})",
                      limits.max_depth, worst.a, worst.b, value, error),
          value);
    }
    if (panels + 1 > limits.max_panels) {
      throw ConvergenceError(
          fmt::format("quadrature panel budget {} exhausted (estimate {:.17g}, error {:.3g})",
                      limits.max_panels, value, error),
          value);
    }
    std::pop_heap(active.begin(), active.end());
    active.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    for (const Panel& half : {gauss_kronrod(f, worst.a, mid, worst.depth + 1),
                              gauss_kronrod(f, mid, worst.b, worst.depth + 1)}) {
      active.push_back(half);
      std::push_heap(active.begin(), active.end());
    }
    ++panels;
  }
}

BracketedRoot find_bracketed_root(const RealFunction& g, double lo, double hi, double g_lo,
                                  double g_hi, const Tolerance& tol, double value_tol,
                                  std::optional<double> monotone_slack) {
  tol.validate();
  if (lo > hi) {
    std::swap(lo, hi);
    std::swap(g_lo, g_hi);
  }
  if (g_lo == 0.0) return {lo, 0.0, 0};
  if (g_hi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(g_lo) == std::signbit(g_hi)) {
    throw Error(ErrorKind::kBracket,
                fmt::format("no sign change over [{:.17g}, {:.17g}]: g = {:.6g}, {:.6g}", lo, hi,
                            g_lo, g_hi));
  }

  bool force_bisection = false;
  for (int iteration = 1; iteration <= tol.max_iterations; ++iteration) {
    const double width = hi - lo;
    const double mid = lo + 0.5 * width;
    if (width <= tol.scale(mid) || mid <= lo || mid >= hi) {
      return std::abs(g_lo) <= std::abs(g_hi) ? BracketedRoot{lo, g_lo, iteration - 1}
                                              : BracketedRoot{hi, g_hi, iteration - 1};
    }

    double x = mid;
    if (!force_bisection) {
      const double secant = hi - g_hi * (hi - lo) / (g_hi - g_lo);
      if (std::isfinite(secant) && secant > lo && secant < hi) x = secant;
    }

    const double gx = g(x);
    if (!std::isfinite(gx)) {
      throw Error(ErrorKind::kEvaluationDomain,
                  fmt::format("non-finite value {} at x = {:.17g} during root search", gx, x));
    }
    if (monotone_slack && (gx < std::min(g_lo, g_hi) - *monotone_slack ||
                           gx > std::max(g_lo, g_hi) + *monotone_slack)) {
      throw Error(ErrorKind::kNotMonotone,
                  fmt::format("value at x = {:.17g} falls outside the bracket values; "
                              "function is not monotone on [{:.17g}, {:.17g}]",
                              x, lo, hi));
    }
    if (gx == 0.0 || std::abs(gx) <= value_tol) return {x, gx, iteration};

    if (std::signbit(gx) == std::signbit(g_lo)) {
      lo = x;
      g_lo = gx;
    } else {
      hi = x;
      g_hi = gx;
    }
    force_bisection = (hi - lo) > 0.5 * width;
  }

  const double best = std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
  throw ConvergenceError(
      fmt::format("root search did not converge in {} iterations (bracket [{:.17g}, {:.17g}])",
                  tol.max_iterations, lo, hi),
      best);
}

double invert_monotone(const RealFunction& f, const Interval& domain, double y,
                       const Tolerance& tol) {
  if (!std::isfinite(y)) {
    throw Error(ErrorKind::kRange, fmt::format("cannot invert at non-finite y = {}", y));
  }
  const double f_lo = checked_eval(f, domain.lo());
  const double f_hi = checked_eval(f, domain.hi());
  if (y == f_lo) return domain.lo();
  if (y == f_hi) return domain.hi();
  if (f_lo == f_hi) {
    throw Error(ErrorKind::kNotMonotone,
                fmt::format("f takes equal values at both ends of {}", domain.to_string()));
  }
  const double y_min = std::min(f_lo, f_hi);
  const double y_max = std::max(f_lo, f_hi);
  if (y < y_min || y > y_max) {
    throw Error(ErrorKind::kRange, fmt::format("y = {:.17g} outside image [{:.17g}, {:.17g}]",
                                               y, y_min, y_max));
  }
  auto shifted = [&](double x) { return f(x) - y; };
  // Values may wobble by a few ulps of |f| without contradicting monotonicity.
  const double slack = 16.0 * kEps * std::max({std::abs(f_lo), std::abs(f_hi), std::abs(y)});
  return find_bracketed_root(shifted, domain.lo(), domain.hi(), f_lo - y, f_hi - y, tol, 0.0,
                             slack)
      .x;
}

double differentiate_numeric(const RealFunction& f, double x, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("derivative step scale must be > 0, got {}", scale));
  }
  const double step = scale * std::cbrt(kEps);
  // Representable step so that (x + h) - (x - h) is exactly 2h.
  const volatile double forward = x + step;
  const double h = forward - x;
  return (checked_eval(f, x + h) - checked_eval(f, x - h)) / (2.0 * h);
}

double differentiate_numeric(const RealFunction& f, double x, double scale,
                             const Interval& domain) {
  if (!domain.contains(x)) {
    throw Error(ErrorKind::kEvaluationDomain,
                fmt::format("x = {:.17g} outside domain {}", x, domain.to_string()));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("derivative step scale must be > 0, got {}", scale));
  }
  const double step = scale * std::cbrt(kEps);
  const double room_right = domain.hi() - x;
  const double room_left = x - domain.lo();
  if (room_right >= step && room_left >= step) return differentiate_numeric(f, x, scale);

  // One-sided second-order stencil toward the side with more room.
  const double direction = room_right >= room_left ? 1.0 : -1.0;
  const double h = std::min(step, 0.5 * std::max(room_left, room_right));
  const double f0 = checked_eval(f, x);
  const double f1 = checked_eval(f, x + direction * h);
  const double f2 = checked_eval(f, x + direction * 2.0 * h);
  return direction * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
}

Monotonicity check_monotone(const RealFunction& f, const Interval& domain, int samples) {
  if (samples < 3) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("check_monotone needs at least 3 samples, got {}", samples));
  }
  bool increasing = true;
  bool decreasing = true;
  double previous = checked_eval(f, domain.sample(0, samples));
  for (int i = 1; i < samples; ++i) {
    const double current = checked_eval(f, domain.sample(i, samples));
    if (!(current > previous)) increasing = false;
    if (!(current < previous)) decreasing = false;
    previous = current;
  }
  if (increasing) return Monotonicity::kIncreasing;
  if (decreasing) return Monotonicity::kDecreasing;
  return Monotonicity::kNotMonotone;
}

}  // namespace numeric
}  // namespace invroot
