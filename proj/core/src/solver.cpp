#include "invroot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "invroot/identity.hpp"

namespace invroot {

std::string_view to_string(RootMethod m) {
  switch (m) {
    case RootMethod::kIdentity: return "identity";
    case RootMethod::kOracle: return "oracle";
  }
  return "unknown";
}

namespace {

constexpr int kGridPanels = 64;
constexpr double kAgreement = 1e-9;

// Offset selection: either one h for every probe or a per-probe choice when
// the bracket leaves no headroom on either side.
struct OffsetPlan {
  bool per_probe = false;
  double h = 0.0;
  double target = 0.0;

  double at(const Interval& domain, double alpha) const {
    if (!per_probe) return h;
    const double room_right = domain.hi() - alpha;
    const double room_left = alpha - domain.lo();
    return room_right >= room_left ? std::min(target, 0.5 * room_right)
                                   : -std::min(target, 0.5 * room_left);
  }
};

bool offset_fits(const Interval& domain, const Interval& bracket, double h) {
  // Rounding of alpha + h is monotone in alpha, so the endpoints decide.
  return domain.contains(bracket.lo() + h) && domain.contains(bracket.hi() + h);
}

// Largest |h| <= magnitude (toward sign) that fits, or 0.
double fit_offset(const Interval& domain, const Interval& bracket, double h) {
  for (int i = 0; i < 8 && h != 0.0; ++i) {
    if (offset_fits(domain, bracket, h)) return h;
    h = std::nextafter(h, 0.0);
  }
  return offset_fits(domain, bracket, h) ? h : 0.0;
}

OffsetPlan plan_offset(const FunctionModel& model, const SolverConfig& config) {
  const Interval& domain = model.domain();
  const Interval& bracket = config.bracket;
  if (!config.h.is_auto()) {
    const double h = config.h.fixed_value();
    if (h == 0.0) throw Error(ErrorKind::kDegenerateOffset, "fixed offset h must be nonzero");
    if (!std::isfinite(h) || !offset_fits(domain, bracket, h)) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("offset h = {:.17g} moves bracket {} outside domain {}", h,
                              bracket.to_string(), domain.to_string()));
    }
    return {false, h, std::abs(h)};
  }
  const double target = 0.25 * bracket.width();
  const double right = fit_offset(domain, bracket, std::min(target, domain.hi() - bracket.hi()));
  const double left = fit_offset(domain, bracket, -std::min(target, bracket.lo() - domain.lo()));
  if (right == 0.0 && left == 0.0) return {true, 0.0, target};
  return {false, right >= -left ? right : left, target};
}

RootResult finish(const FunctionModel& model, double root, double residual, int iterations,
                  double h, bool filtered) {
  RootResult r;
  r.root = root;
  r.residual_at_root = residual;
  r.f_at_root = model.value(root);
  r.iterations = iterations;
  r.h_used = h;
  r.spurious_filtered = filtered;
  r.method = RootMethod::kIdentity;
  return r;
}

}  // namespace

double root_acceptance_threshold(const FunctionModel& model, double root, const Tolerance& tol) {
  double slope = 0.0;
  try {
    slope = std::abs(model.derivative(root));
  } catch (const Error&) {
    slope = 0.0;
  }
  return 1e4 * tol.scale(root) * (1.0 + slope);
}

RootResult solve_identity(const FunctionModel& model, const SolverConfig& config) {
  config.tol.validate();
  const Interval& domain = model.domain();
  const Interval& bracket = config.bracket;
  if (!domain.contains(bracket)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("bracket {} is not inside domain {}", bracket.to_string(),
                            domain.to_string()));
  }
  const ValidationReport report = validate_model(model);
  if (!report.passed()) {
    throw Error(ErrorKind::kAdmissibility,
                fmt::format("{} is not a strictly monotone function with computable inverse and "
                            "antiderivatives on {}: {}",
                            model.name(), domain.to_string(), report.failures()));
  }

  const OffsetPlan plan = plan_offset(model, config);
  auto residual = [&](double alpha) {
    return root_residual(model, alpha, plan.at(domain, alpha));
  };
  auto accepted = [&](double x) {
    return std::abs(model.value(x)) <= root_acceptance_threshold(model, x, config.tol);
  };

  // Zero handling: alpha = 0 either is a genuine root of f (R has a double
  // zero there, no sign change) or a spurious zero of R to be excluded.
  const bool zero_inside = bracket.contains(0.0);
  bool genuine_zero = false;
  bool filtered = false;
  double exclusion = 0.0;
  if (zero_inside && config.filter_spurious) {
    genuine_zero = accepted(0.0);
    if (!genuine_zero) {
      filtered = true;
      exclusion = 1e3 * config.tol.scale(bracket.width());
    }
  }

  // Grid pieces ordered from bracket.lo. When 0 is special the scan never
  // pairs points across it: the negative piece ends at -exclusion and the
  // positive piece starts at +exclusion.
  std::vector<double> grid;
  for (int i = 0; i <= kGridPanels; ++i) grid.push_back(bracket.sample(i, kGridPanels + 1));
  std::vector<std::vector<double>> pieces;
  if (!genuine_zero && !filtered) {
    pieces.push_back(grid);
  } else {
    std::vector<double> negative;
    std::vector<double> positive;
    if (exclusion > 0.0 && exclusion <= bracket.hi()) positive.push_back(exclusion);
    for (double x : grid) {
      if (x < -exclusion && x < 0.0) negative.push_back(x);
      if (x > exclusion && x > 0.0) positive.push_back(x);
    }
    if (exclusion > 0.0 && -exclusion >= bracket.lo()) negative.push_back(-exclusion);
    pieces.push_back(std::move(negative));
    pieces.push_back(std::move(positive));
  }

  bool zero_pending = genuine_zero;
  for (const auto& piece : pieces) {
    if (piece.empty()) continue;
    if (zero_pending && piece.front() > 0.0) {
      return finish(model, 0.0, residual(0.0), 0, plan.at(domain, 0.0), false);
    }
    double x_prev = piece.front();
    double r_prev = residual(x_prev);
    for (std::size_t i = 0; i <= piece.size(); ++i) {
      if (r_prev == 0.0) {
        if (!config.filter_spurious || accepted(x_prev)) {
          return finish(model, x_prev, 0.0, 0, plan.at(domain, x_prev), filtered);
        }
        filtered = true;
      }
      if (i + 1 >= piece.size()) break;
      const double x_next = piece[i + 1];
      const double r_next = residual(x_next);
      if (r_next != 0.0 && r_prev != 0.0 && std::signbit(r_prev) != std::signbit(r_next)) {
        const auto found = numeric::find_bracketed_root(residual, x_prev, x_next, r_prev, r_next,
                                                        config.tol);
        if (!config.filter_spurious || accepted(found.x)) {
          return finish(model, found.x, found.value, found.iterations,
                        plan.at(domain, found.x), filtered);
        }
        filtered = true;
      }
      x_prev = x_next;
      r_prev = r_next;
    }
  }
  if (zero_pending) {
    return finish(model, 0.0, residual(0.0), 0, plan.at(domain, 0.0), false);
  }

  if (filtered) {
    throw Error(ErrorKind::kNoRootInBracket,
                fmt::format("the only zero of the residual in {} is the spurious alpha = 0 "
                            "(f(0) = {:.6g}); {} has no root there",
                            bracket.to_string(), zero_inside ? model.value(0.0) : 0.0,
                            model.name()));
  }
  throw Error(ErrorKind::kBracket,
              fmt::format("residual does not change sign over {}; no root of {} bracketed",
                          bracket.to_string(), model.name()));
}

RootResult solve_oracle_bisect(const FunctionModel& model, const Interval& bracket,
                               const Tolerance& tol) {
  tol.validate();
  double lo = bracket.lo();
  double hi = bracket.hi();
  double f_lo = model.value(lo);
  const double f_hi = model.value(hi);

  RootResult r;
  r.method = RootMethod::kOracle;
  auto done = [&](double x, double fx, int iterations) {
    r.root = x;
    r.f_at_root = fx;
    r.residual_at_root = fx;
    r.iterations = iterations;
    return r;
  };
  if (f_lo == 0.0) return done(lo, f_lo, 0);
  if (f_hi == 0.0) return done(hi, f_hi, 0);
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw Error(ErrorKind::kBracket,
                fmt::format("f does not change sign over {} (f = {:.6g}, {:.6g})",
                            bracket.to_string(), f_lo, f_hi));
  }

  for (int iteration = 1; iteration <= tol.max_iterations; ++iteration) {
    const double mid = lo + 0.5 * (hi - lo);
    const double f_mid = model.value(mid);
    if (f_mid == 0.0 || hi - lo <= tol.scale(mid) || mid <= lo || mid >= hi) {
      return done(mid, f_mid, iteration);
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError(fmt::format("bisection did not converge in {} iterations",
                                     tol.max_iterations),
                         lo + 0.5 * (hi - lo));
}

ComparisonReport compare_methods(const FunctionModel& model, const SolverConfig& config) {
  auto run = [](auto&& solve) {
    MethodOutcome outcome;
    try {
      outcome.result = solve();
    } catch (const Error& e) {
      outcome.error = e.kind();
      outcome.message = e.what();
    }
    return outcome;
  };
  ComparisonReport report;
  report.identity = run([&] { return solve_identity(model, config); });
  report.oracle = run([&] { return solve_oracle_bisect(model, config.bracket, config.tol); });
  if (report.identity.ok() && report.oracle.ok()) {
    const double oracle_root = report.oracle.result->root;
    report.difference = std::abs(report.identity.result->root - oracle_root);
    report.agree = report.difference <= kAgreement * (1.0 + std::abs(oracle_root));
  } else {
    report.difference = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace invroot
