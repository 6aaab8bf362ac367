#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>

#include "invroot/error.hpp"
#include "invroot/expr.hpp"
#include "invroot/numeric.hpp"

namespace invroot::testing {

/// Value of e at x, or nullopt when x is outside its real domain.
inline std::optional<double> try_evaluate(const expr::Expr& e, double x) {
  try {
    return expr::evaluate(e, x);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// True when print -> parse reproduces e: the reprint is identical and both
/// trees give bit-identical values (or both reject) at every probe.
inline bool round_trips(const expr::Expr& e, std::initializer_list<double> probes,
                        std::string* why = nullptr) {
  const std::string printed = expr::print(e);
  expr::Expr back = expr::Expr::constant(0.0);
  try {
    back = expr::parse(printed);
  } catch (const Error& error) {
    if (why) *why = printed + ": " + error.what();
    return false;
  }
  if (expr::print(back) != printed) {
    if (why) *why = printed + " reprinted as " + expr::print(back);
    return false;
  }
  for (double x : probes) {
    const auto a = try_evaluate(e, x);
    const auto b = try_evaluate(back, x);
    if (a.has_value() != b.has_value() ||
        (a && std::memcmp(&*a, &*b, sizeof(double)) != 0 && !(std::isnan(*a) && std::isnan(*b)))) {
      if (why) *why = printed + " differs at x = " + std::to_string(x);
      return false;
    }
  }
  return true;
}

/// Smooth expressions with domains for derivative checks.
struct DerivativeCase {
  std::string_view source;
  double lo;
  double hi;
};

inline constexpr std::array<DerivativeCase, 12> kDerivativeCases = {{
    {"x^3", 0.5, 3.0},
    {"ln(x)", 0.2, 5.0},
    {"exp(x) - 2", -1.0, 2.0},
    {"sqrt(x) + x", 0.1, 4.0},
    {"1/x - 1", 0.3, 4.0},
    {"x^3 + x - 2", -2.0, 3.0},
    {"ln(x^2 + 1)", -3.0, 3.0},
    {"x/(1 + x^2)", -2.0, 2.0},
    {"exp(sqrt(x))", 0.1, 4.0},
    {"(2*x + 1)^(1/3)", 0.0, 4.0},
    {"x^-2 - 3*x", 0.5, 3.0},
    {"x*exp(-x/2)", -1.0, 1.0},
}};

/// Largest relative error |d_sym - d_num| / (1 + |d_num|) over `points`
/// evenly spaced interior points, the numeric derivative taken by differencing.
inline double worst_derivative_error(const DerivativeCase& c, int points = 50) {
  const expr::Expr e = expr::parse(c.source);
  const expr::Expr de = expr::derive(e);
  const Interval domain(c.lo, c.hi);
  const RealFunction f = [&](double x) { return expr::evaluate(e, x); };
  double worst = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double x = c.lo + (c.hi - c.lo) * i / (points + 1);
    const double numeric = numeric::differentiate_numeric(f, x, 1.0, domain);
    const double symbolic = expr::evaluate(de, x);
    worst = std::max(worst, std::abs(symbolic - numeric) / (1.0 + std::abs(numeric)));
  }
  return worst;
}

}  // namespace invroot::testing
