#include "invroot/solver.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "invroot/catalog.hpp"
#include "invroot/error.hpp"
#include "support/oracles.hpp"

namespace invroot {
namespace {

using catalog::Family;

FunctionModel family(Family f, std::vector<double> params, Interval domain) {
  return catalog::instantiate({f, std::move(params), domain});
}

TEST(SolveIdentityTest, LogRootIsOne) {
  const auto ln = family(Family::kLog, {}, {0.1, 10.0});
  const RootResult r = solve_identity(ln, {.bracket = {0.2, 5.0}});
  EXPECT_NEAR(r.root, 1.0, 1e-12);
  EXPECT_EQ(r.method, RootMethod::kIdentity);
  EXPECT_FALSE(r.spurious_filtered);
  EXPECT_NE(r.h_used, 0.0);
  EXPECT_LE(std::abs(r.f_at_root), 1e-12);
}

TEST(SolveIdentityTest, ExpShiftRootIsLnC) {
  const auto model = family(Family::kExpShift, {2.0}, {-1.0, 3.0});
  const RootResult r = solve_identity(model, {.bracket = {0.1, 2.0}});
  EXPECT_NEAR(r.root, std::numbers::ln2, 1e-12);
}

TEST(SolveIdentityTest, SpuriousZeroIsFiltered) {
  const auto affine = family(Family::kAffine, {2.0, -4.0}, {-1.0, 3.0});
  const RootResult r = solve_identity(affine, {.bracket = {-1.0, 3.0}});
  EXPECT_NEAR(r.root, 2.0, 1e-12);
  EXPECT_TRUE(r.spurious_filtered);
}

TEST(SolveIdentityTest, GenuineRootAtZeroIsReturned) {
  const auto affine = family(Family::kAffine, {3.0, 0.0}, {-2.0, 2.0});
  const RootResult r = solve_identity(affine, {.bracket = {-1.0, 1.5}});
  EXPECT_NEAR(r.root, 0.0, 1e-12);
  EXPECT_FALSE(r.spurious_filtered);
}

TEST(SolveIdentityTest, OnlySpuriousZeroGivesNoRoot) {
  // 2x + 10 has its root at -5, outside the bracket; R still vanishes at 0.
  const auto affine = family(Family::kAffine, {2.0, 10.0}, {-3.0, 3.0});
  try {
    solve_identity(affine, {.bracket = {-1.0, 1.0}});
    FAIL();
  } catch (const Error& error) {
    EXPECT_EQ(error.kind(), ErrorKind::kNoRootInBracket);
  }
}

TEST(SolveIdentityTest, NoSignChangeGivesBracketError) {
  const auto ln = family(Family::kLog, {}, {0.1, 10.0});
  try {
    solve_identity(ln, {.bracket = {2.0, 5.0}});
    FAIL();
  } catch (const Error& error) {
    EXPECT_EQ(error.kind(), ErrorKind::kBracket);
  }
}

TEST(SolveIdentityTest, FixedOffsetIsHonoured) {
  const auto ln = family(Family::kLog, {}, {0.1, 10.0});
  SolverConfig config{.bracket = {0.2, 5.0}, .h = HPolicy::fixed(0.5)};
  const RootResult r = solve_identity(ln, config);
  EXPECT_EQ(r.h_used, 0.5);
  EXPECT_NEAR(r.root, 1.0, 1e-12);

  config.h = HPolicy::fixed(6.0);  // alpha + h leaves the domain
  EXPECT_THROW(solve_identity(ln, config), Error);
  config.h = HPolicy::fixed(0.0);
  EXPECT_THROW(solve_identity(ln, config), Error);
}

TEST(SolveIdentityTest, RejectsInadmissibleModel) {
  const FunctionModel parabola("x^2 - 0.25", {-1.0, 1.0}, [](double x) { return x * x - 0.25; });
  try {
    solve_identity(parabola, {.bracket = {-1.0, 1.0}});
    FAIL();
  } catch (const Error& error) {
    EXPECT_EQ(error.kind(), ErrorKind::kAdmissibility);
  }
}

TEST(SolveIdentityTest, BracketOutsideDomain) {
  const auto ln = family(Family::kLog, {}, {0.1, 10.0});
  try {
    solve_identity(ln, {.bracket = {0.05, 5.0}});
    FAIL();
  } catch (const Error& error) {
    EXPECT_EQ(error.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(SolveIdentityTest, BracketEqualToDomainUsesInteriorOffsets) {
  const auto model = family(Family::kCubeShift, {8.0}, {-1.0, 3.0});
  const RootResult r = solve_identity(model, {.bracket = {-1.0, 3.0}});
  EXPECT_NEAR(r.root, 2.0, 1e-12);
  EXPECT_TRUE(r.spurious_filtered);
}

TEST(SolveIdentityTest, SynthesizedModel) {
  const FunctionModel poly("x^3 + x - 2", {-2.0, 3.0},
                           [](double x) { return x * x * x + x - 2.0; });
  const RootResult r = solve_identity(poly, {.bracket = {-2.0, 3.0}});
  EXPECT_NEAR(r.root, 1.0, 1e-11);
}

TEST(SolveOracleTest, Examples) {
  const auto ln = family(Family::kLog, {}, {0.1, 10.0});
  const RootResult r = solve_oracle_bisect(ln, {0.2, 5.0});
  EXPECT_NEAR(r.root, 1.0, 1e-12);
  EXPECT_EQ(r.method, RootMethod::kOracle);
  EXPECT_GT(r.iterations, 0);
  EXPECT_THROW(solve_oracle_bisect(ln, {2.0, 5.0}), Error);
}

TEST(CompareMethodsTest, AgreeOnCatalogFamily) {
  const auto model = family(Family::kReciprocal, {1.0}, {0.3, 4.0});
  const ComparisonReport report = compare_methods(model, {.bracket = {0.5, 3.0}});
  ASSERT_TRUE(report.identity.ok());
  ASSERT_TRUE(report.oracle.ok());
  EXPECT_TRUE(report.agree);
  EXPECT_LE(report.difference, 1e-9);
}

TEST(CompareMethodsTest, ReportsErrorsPerMethod) {
  const auto ln = family(Family::kLog, {}, {0.1, 10.0});
  const ComparisonReport report = compare_methods(ln, {.bracket = {2.0, 5.0}});
  EXPECT_FALSE(report.identity.ok());
  EXPECT_FALSE(report.oracle.ok());
  EXPECT_EQ(report.identity.error, ErrorKind::kBracket);
  EXPECT_FALSE(report.agree);
  EXPECT_TRUE(std::isnan(report.difference));
}

TEST(RootAcceptanceTest, ScalesWithSlope) {
  const auto flat = family(Family::kAffine, {0.5, 0.0}, {-1.0, 1.0});
  const auto steep = family(Family::kAffine, {50.0, 0.0}, {-1.0, 1.0});
  const Tolerance tol{};
  EXPECT_LT(root_acceptance_threshold(flat, 0.0, tol), root_acceptance_threshold(steep, 0.0, tol));
}

// Identity and bisection agree on random single-root brackets of every family.
TEST(SolverPropertyTest, AgreesWithBisectionOracle) {
  std::mt19937_64 rng(99);
  for (const auto& info : catalog::list_families()) {
    const auto spec = catalog::default_spec(info.family);
    const auto model = catalog::instantiate(spec);
    const double root = catalog::known_root(spec);
    const Interval& d = model.domain();
    for (int i = 0; i < 10; ++i) {
      const double lo = std::uniform_real_distribution<double>(d.lo(), root)(rng);
      const double hi = std::uniform_real_distribution<double>(root, d.hi())(rng);
      const RootResult r = solve_identity(model, {.bracket = {lo, hi}});
      const double oracle = testing::bisect(
          [&](long double x) { return static_cast<long double>(model.value(double(x))); }, lo, hi);
      EXPECT_NEAR(r.root, oracle, 1e-9 * (1.0 + std::abs(oracle))) << info.id;
      EXPECT_NEAR(r.root, root, 1e-9 * (1.0 + std::abs(root))) << info.id;
    }
  }
}

}  // namespace
}  // namespace invroot
