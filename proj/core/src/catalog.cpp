#include "invroot/catalog.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "invroot/error.hpp"

namespace invroot::catalog {
namespace {

const std::array<FamilyInfo, 5>& table() {
  static const std::array<FamilyInfo, 5> families = {{
      {Family::kLog, "log", "f(x) = ln(x)", {}, {}, Interval(0.1, 10.0),
       "domain inside (0, inf)", "increasing", "alpha = 1",
       "f^-1(y) = e^y, F(x) = x ln x - x, G(y) = e^y"},
      {Family::kAffine, "affine", "f(x) = m x + b", {"m", "b"}, {2.0, -4.0},
       Interval(-5.0, 5.0), "m != 0", "increasing for m > 0, decreasing for m < 0",
       "alpha = -b / m", "f^-1(y) = (y - b) / m, F(x) = m x^2 / 2 + b x, G(y) = (y - b)^2 / (2m)"},
      {Family::kExpShift, "exp-shift", "f(x) = e^x - c", {"c"}, {2.0}, Interval(-1.0, 3.0),
       "c > 0", "increasing", "alpha = ln c",
       "f^-1(y) = ln(y + c), F(x) = e^x - c x, G(y) = (y + c) ln(y + c) - (y + c)"},
      {Family::kCubeShift, "cube-shift", "f(x) = x^3 - c", {"c"}, {8.0}, Interval(-1.0, 3.0),
       "c finite", "increasing", "alpha = cbrt(c)",
       "f^-1(y) = cbrt(y + c), F(x) = x^4 / 4 - c x, G(y) = (3/4) (y + c) cbrt(y + c)"},
      {Family::kReciprocal, "reciprocal", "f(x) = 1/x - c", {"c"}, {1.0}, Interval(0.3, 4.0),
       "c > 0, domain inside (0, inf)", "decreasing", "alpha = 1 / c",
       "f^-1(y) = 1 / (y + c), F(x) = ln x - c x, G(y) = ln(y + c)"},
  }};
  return families;
}

void require(bool condition, const FamilySpec& spec, std::string_view what) {
  if (!condition) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("family {} on {} is inadmissible: {}", id(spec.family),
                            spec.domain.to_string(), what));
  }
}

// " + v" or " - |v|", so generated names read like the expression grammar.
std::string signed_term(double v) {
  return v < 0.0 ? fmt::format(" - {:.17g}", -v) : fmt::format(" + {:.17g}", v);
}

}  // namespace

std::string_view id(Family family) {
  for (const auto& f : table()) {
    if (f.family == family) return f.id;
  }
  return "unknown";
}

std::optional<Family> family_from_id(std::string_view name) {
  for (const auto& f : table()) {
    if (f.id == name) return f.family;
  }
  return std::nullopt;
}

std::vector<FamilyInfo> list_families() { return {table().begin(), table().end()}; }

const FamilyInfo& info(Family family) {
  for (const auto& f : table()) {
    if (f.family == family) return f;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown family");
}

FamilySpec default_spec(Family family) {
  const FamilyInfo& i = info(family);
  return {family, i.default_params, i.default_domain};
}

void check_admissible(const FamilySpec& spec) {
  const FamilyInfo& i = info(spec.family);
  require(spec.params.size() == i.parameter_names.size(), spec,
          fmt::format("expected {} parameter(s), got {}", i.parameter_names.size(),
                      spec.params.size()));
  for (double p : spec.params) require(std::isfinite(p), spec, "parameters must be finite");
  switch (spec.family) {
    case Family::kLog:
      require(spec.domain.lo() > 0.0, spec, "domain must lie inside (0, inf)");
      break;
    case Family::kAffine:
      require(spec.params[0] != 0.0, spec, "slope m must be nonzero");
      break;
    case Family::kExpShift:
      require(spec.params[0] > 0.0, spec, "offset c must be > 0");
      break;
    case Family::kCubeShift:
      break;
    case Family::kReciprocal:
      require(spec.params[0] > 0.0, spec, "offset c must be > 0");
      require(spec.domain.lo() > 0.0, spec, "domain must lie inside (0, inf)");
      break;
  }
}

FunctionModel instantiate(const FamilySpec& spec) {
  check_admissible(spec);
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::kLog:
      return FunctionModel(
          "ln(x)", spec.domain, [](double x) { return std::log(x); },
          {.derivative = [](double x) { return 1.0 / x; },
           .inverse = [](double y) { return std::exp(y); },
           .antiderivative = [](double x) { return x * std::log(x) - x; },
           .inverse_antiderivative = [](double y) { return std::exp(y); }});
    case Family::kAffine: {
      const double m = p[0];
      const double b = p[1];
      return FunctionModel(
          fmt::format("{:.17g}*x{}", m, signed_term(b)), spec.domain,
          [m, b](double x) { return m * x + b; },
          {.derivative = [m](double) { return m; },
           .inverse = [m, b](double y) { return (y - b) / m; },
           .antiderivative = [m, b](double x) { return 0.5 * m * x * x + b * x; },
           .inverse_antiderivative =
               [m, b](double y) { return (y - b) * (y - b) / (2.0 * m); }});
    }
    case Family::kExpShift: {
      const double c = p[0];
      return FunctionModel(
          fmt::format("exp(x){}", signed_term(-c)), spec.domain,
          [c](double x) { return std::exp(x) - c; },
          {.derivative = [](double x) { return std::exp(x); },
           .inverse = [c](double y) { return std::log(y + c); },
           .antiderivative = [c](double x) { return std::exp(x) - c * x; },
           .inverse_antiderivative =
               [c](double y) { return (y + c) * std::log(y + c) - (y + c); }});
    }
    case Family::kCubeShift: {
      const double c = p[0];
      return FunctionModel(
          fmt::format("x^3{}", signed_term(-c)), spec.domain,
          [c](double x) { return x * x * x - c; },
          {.derivative = [](double x) { return 3.0 * x * x; },
           .inverse = [c](double y) { return std::cbrt(y + c); },
           .antiderivative = [c](double x) { return 0.25 * x * x * x * x - c * x; },
           .inverse_antiderivative =
               [c](double y) { return 0.75 * (y + c) * std::cbrt(y + c); }});
    }
    case Family::kReciprocal: {
      const double c = p[0];
      return FunctionModel(
          fmt::format("1/x{}", signed_term(-c)), spec.domain,
          [c](double x) { return 1.0 / x - c; },
          {.derivative = [](double x) { return -1.0 / (x * x); },
           .inverse = [c](double y) { return 1.0 / (y + c); },
           .antiderivative = [c](double x) { return std::log(x) - c * x; },
           .inverse_antiderivative = [c](double y) { return std::log(y + c); }});
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown family");
}

double known_root(const FamilySpec& spec) {
  check_admissible(spec);
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::kLog: return 1.0;
    case Family::kAffine: return -p[1] / p[0];
    case Family::kExpShift: return std::log(p[0]);
    case Family::kCubeShift: return std::cbrt(p[0]);
    case Family::kReciprocal: return 1.0 / p[0];
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown family");
}

}  // namespace invroot::catalog
