// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "invroot/catalog.hpp"
#include "invroot/cli.hpp"
#include "invroot/expr.hpp"
#include "invroot/identity.hpp"
#include "invroot/solver.hpp"
#include "invroot/jobs.hpp"
#include "support/expr_checks.hpp"
#include "support/oracles.hpp"
#include "support/parser_cases.hpp"
#include "support/random_ast.hpp"

namespace {

using namespace invroot;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<FunctionModel> catalog_models() {
  std::vector<FunctionModel> models;
  for (const auto& info : catalog::list_families()) {
    models.push_back(catalog::instantiate(catalog::default_spec(info.family)));
  }
  return models;
}

double corner_scale(const FunctionModel& m, double a, double b) {
  return 1.0 + std::abs(b * m.value(b)) + std::abs(a * m.value(a));
}

Verdict worked_example() {
  const auto start = Clock::now();
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"--json", "solve", "--function", "ln(x)", "--domain", "0.1", "10",
                             "--bracket", "0.2", "5"},
                            out, err);
  const double elapsed = seconds_since(start);
  if (code != 0) return {false, fmt::format("exit {}: {}", code, err.str())};
  const double root = cli::Json::parse(out.str())["root"].get<double>();
  const double error = std::abs(root - 1.0);
  return {error <= 1e-10 && elapsed < 1.0,
          fmt::format("root {:.17g}, |error| {:.3g}, {:.3f} s", root, error, elapsed)};
}

Verdict rectangle_identity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  int pairs = 0;
  for (const auto& m : catalog_models()) {
    std::uniform_real_distribution<double> point(m.domain().lo(), m.domain().hi());
    for (int i = 0; i < 100; ++i, ++pairs) {
      const double a = point(rng);
      const double b = point(rng);
      worst = std::max(worst, std::abs(rectangle_residual_full(m, a, b)) / corner_scale(m, a, b));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-8 && elapsed < 10.0,
          fmt::format("{} pairs, worst normalized residual {:.3g}, {:.3f} s", pairs, worst,
                      elapsed)};
}

Verdict h_invariance() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (const auto& m : catalog_models()) {
    const Interval& d = m.domain();
    std::uniform_real_distribution<double> point(d.lo(), d.hi());
    for (int i = 0; i < 20; ++i) {
      const double alpha = point(rng);
      const double right = d.hi() - alpha;
      const double left = alpha - d.lo();
      const double base = right >= left ? 0.9 * right : -0.9 * left;
      const double offsets[] = {base, base / 10, base / 100};
      const HSweep sweep = h_sweep(m, alpha, offsets);
      worst = std::max(worst, sweep.max_spread / (1.0 + std::abs(alpha * m.value(alpha))));
    }
  }
  return {worst <= 1e-8, fmt::format("100 points x 3 offsets, worst normalized spread {:.3g}", worst)};
}

// The oracle residual integrates f and, after substituting y = f(x), x f'(x)
// with long double Simpson, independent of the library's quadrature, F and G.
Verdict residual_closed_form() {
  std::mt19937_64 rng(1003);
  double worst_library = 0.0;
  double worst_oracle = 0.0;
  for (const auto& m : catalog_models()) {
    const Interval& d = m.domain();
    std::uniform_real_distribution<double> point(d.lo(), d.hi());
    for (int i = 0; i < 20; ++i) {
      const double alpha = point(rng);
      const double shifted = point(rng);
      if (shifted == alpha) continue;
      const double h = shifted - alpha;
      const double expected = -alpha * m.value(alpha);
      const double scale = corner_scale(m, alpha, shifted);
      worst_library =
          std::max(worst_library, std::abs(root_residual(m, alpha, h) - expected) / scale);
      const double under = testing::simpson(
          [&](long double x) { return static_cast<long double>(m.value(double(x))); }, alpha,
          shifted);
      const double left = testing::simpson(
          [&](long double x) { return x * static_cast<long double>(m.derivative(double(x))); },
          alpha, shifted);
      const double oracle = under + left - shifted * m.value(shifted);
      worst_oracle = std::max(worst_oracle, std::abs(oracle - expected) / scale);
    }
  }
  return {worst_library <= 1e-8 && worst_oracle <= 1e-8,
          fmt::format("100 (alpha, h) pairs, worst normalized |R + alpha f(alpha)| {:.3g}, "
                      "quadrature oracle {:.3g}",
                      worst_library, worst_oracle)};
}

Verdict oracle_equivalence() {
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  int spurious = 0;
  int filtered = 0;
  int failures = 0;
  for (const auto& info : catalog::list_families()) {
    const auto spec = catalog::default_spec(info.family);
    const auto m = catalog::instantiate(spec);
    const double root = catalog::known_root(spec);
    const Interval& d = m.domain();
    for (int i = 0; i < 20; ++i) {
      const double lo = std::uniform_real_distribution<double>(d.lo(), root)(rng);
      const double hi = std::uniform_real_distribution<double>(root, d.hi())(rng);
      try {
        const RootResult identity = solve_identity(m, {.bracket = {lo, hi}});
        const RootResult oracle = solve_oracle_bisect(m, {lo, hi});
        worst = std::max(worst,
                         std::abs(identity.root - oracle.root) / (1.0 + std::abs(oracle.root)));
        if (identity.spurious_filtered) ++filtered;
        if (m.domain().contains(0.0) && m.value(0.0) != 0.0 && std::abs(identity.root) < 1e-6) {
          ++spurious;
        }
      } catch (const Error& e) {
        ++failures;
        std::fprintf(stderr, "  %s [%g, %g]: %s\n", info.id.c_str(), lo, hi, e.what());
      }
    }
  }
  return {worst <= 1e-9 && spurious == 0 && failures == 0,
          fmt::format("100 brackets, worst relative difference {:.3g}, {} filtered zero(s) "
                      "around alpha = 0, {} spurious root(s), {} failure(s)",
                      worst, filtered, spurious, failures)};
}

Verdict synthesized_fidelity() {
  std::mt19937_64 rng(1005);
  double worst_f = 0.0;
  double worst_inverse = 0.0;
  double worst_g = 0.0;
  for (const auto& analytic : catalog_models()) {
    const auto numeric = analytic.without_analytic(
        {Capability::kInverse, Capability::kAntiderivative, Capability::kInverseAntiderivative});
    const Interval& d = analytic.domain();
    std::uniform_real_distribution<double> point(d.lo(), d.hi());
    std::uniform_real_distribution<double> level(analytic.image().lo, analytic.image().hi);
    for (int i = 0; i < 50; ++i) {
      const double a = point(rng);
      const double b = point(rng);
      const double dF = analytic.antiderivative(b) - analytic.antiderivative(a);
      worst_f = std::max(worst_f, std::abs(numeric.antiderivative(b) - numeric.antiderivative(a) -
                                           dF) / (1.0 + std::abs(dF)));
      const double y1 = level(rng);
      const double y2 = level(rng);
      const double x = analytic.inverse(y1);
      worst_inverse = std::max(worst_inverse, std::abs(numeric.inverse(y1) - x) / (1.0 + std::abs(x)));
      const double dG = analytic.inverse_antiderivative(y2) - analytic.inverse_antiderivative(y1);
      worst_g = std::max(worst_g, std::abs(laisant_G(numeric, y2) - laisant_G(numeric, y1) - dG) /
                                      (1.0 + std::abs(dG)));
    }
  }
  const double worst = std::max({worst_f, worst_inverse, worst_g});
  return {worst <= 1e-8, fmt::format("250 points, worst F {:.3g}, inverse {:.3g}, G {:.3g}",
                                     worst_f, worst_inverse, worst_g)};
}

Verdict parser_suite() {
  int golden_failures = 0;
  for (const auto& g : testing::kGoldenParses) {
    try {
      if (testing::describe_tokens(expr::tokenize(g.source)) != g.tokens) ++golden_failures;
      if (expr::print(expr::parse(g.source)) != g.tree) ++golden_failures;
    } catch (const Error&) {
      ++golden_failures;
    }
  }
  double worst_derivative = 0.0;
  for (const auto& c : testing::kDerivativeCases) {
    worst_derivative = std::max(worst_derivative, testing::worst_derivative_error(c));
  }
  testing::RandomAst random(2025);
  int round_trip_failures = 0;
  for (int i = 0; i < 500; ++i) {
    const expr::Expr e = random();
    std::string why;
    if (!testing::round_trips(
            e, {random.uniform(-5, 5), random.uniform(0.01, 3), random.uniform(-3, -0.01), 1.0},
            &why)) {
      ++round_trip_failures;
      std::fprintf(stderr, "  round trip: %s\n", why.c_str());
    }
  }
  return {golden_failures == 0 && worst_derivative <= 1e-6 && round_trip_failures == 0,
          fmt::format("{} golden sources ({} mismatches), {} derivative cases worst relative "
                      "error {:.3g}, 500 random trees ({} round-trip failures)",
                      testing::kGoldenParses.size(), golden_failures,
                      testing::kDerivativeCases.size(), worst_derivative, round_trip_failures)};
}

Verdict parsed_model_equivalence() {
  struct Case {
    const char* source;
    catalog::Family family;
    Interval bracket;
  };
  const Case cases[] = {{"ln(x)", catalog::Family::kLog, {0.2, 5.0}},
                        {"2*x - 4", catalog::Family::kAffine, {-4.0, 4.5}}};
  double worst = 0.0;
  std::string roots;
  for (const auto& c : cases) {
    const auto spec = catalog::default_spec(c.family);
    const auto parsed = expr::to_function_model(c.source, spec.domain);
    const double parsed_root = solve_identity(parsed, {.bracket = c.bracket}).root;
    const double catalog_root =
        solve_identity(catalog::instantiate(spec), {.bracket = c.bracket}).root;
    worst = std::max(worst, std::abs(parsed_root - catalog_root));
    roots += fmt::format("{}{} -> {:.17g}", roots.empty() ? "" : ", ", c.source, parsed_root);
  }
  return {worst <= 1e-9, fmt::format("{}; worst difference {:.3g}", roots, worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"worked example ln(x)", worked_example},
      {"rectangle identity", rectangle_identity},
      {"h-invariance", h_invariance},
      {"residual closed form", residual_closed_form},
      {"agreement with bisection", oracle_equivalence},
      {"synthesized capabilities", synthesized_fidelity},
      {"expression parser", parser_suite},
      {"parsed models match catalog", parsed_model_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, fmt::format("unexpected exception: {}", e.what())};
    }
    if (!v.passed) ++failed;
    std::printf("%s %zu %-30s %s\n", v.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
