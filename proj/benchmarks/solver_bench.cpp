#include <benchmark/benchmark.h>

#include <cmath>

#include "invroot/catalog.hpp"
#include "invroot/expr.hpp"
#include "invroot/numeric.hpp"
#include "invroot/solver.hpp"

namespace {

using invroot::Interval;
using invroot::catalog::Family;

invroot::FunctionModel catalog_model(Family family) {
  return invroot::catalog::instantiate(invroot::catalog::default_spec(family));
}

void BM_SolveIdentityLog(benchmark::State& state) {
  const auto model = catalog_model(Family::kLog);
  const invroot::SolverConfig config{Interval(0.2, 5.0)};
  for (auto _ : state) benchmark::DoNotOptimize(invroot::solve_identity(model, config).root);
}
BENCHMARK(BM_SolveIdentityLog);

void BM_SolveOracleLog(benchmark::State& state) {
  const auto model = catalog_model(Family::kLog);
  const Interval bracket(0.2, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(invroot::solve_oracle_bisect(model, bracket).root);
}
BENCHMARK(BM_SolveOracleLog);

// Fully synthesized path: numeric inverse, quadrature F, Laisant G.
void BM_SolveIdentityParsed(benchmark::State& state) {
  const auto model = invroot::expr::to_function_model("exp(x) - 2", Interval(-1.0, 3.0));
  const invroot::SolverConfig config{Interval(0.1, 2.0)};
  for (auto _ : state) benchmark::DoNotOptimize(invroot::solve_identity(model, config).root);
}
BENCHMARK(BM_SolveIdentityParsed)->Unit(benchmark::kMillisecond);

void BM_Integrate(benchmark::State& state) {
  auto f = [](double x) { return std::log(x) * std::cos(x); };
  for (auto _ : state) benchmark::DoNotOptimize(invroot::numeric::integrate(f, 0.5, 6.0));
}
BENCHMARK(BM_Integrate);

void BM_InvertMonotone(benchmark::State& state) {
  auto f = [](double x) { return x * x * x + x; };
  const Interval domain(0.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(invroot::numeric::invert_monotone(f, domain, 2.0));
  }
}
BENCHMARK(BM_InvertMonotone);

void BM_ParseAndEvaluate(benchmark::State& state) {
  for (auto _ : state) {
    const auto e = invroot::expr::parse("exp(x) * sqrt(x^2 + 1) - ln(x + 3) / 2");
    benchmark::DoNotOptimize(invroot::expr::evaluate(e, 0.7));
  }
}
BENCHMARK(BM_ParseAndEvaluate);

}  // namespace
BENCHMARK_MAIN();
