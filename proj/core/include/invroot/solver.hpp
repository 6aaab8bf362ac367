#pragma once

#include <optional>
#include <string>

#include "invroot/error.hpp"
#include "invroot/function_model.hpp"

namespace invroot {

/// Offset h used when evaluating R(alpha; h) during the search.
class HPolicy {
 public:
  static HPolicy automatic() { return HPolicy(std::nullopt); }
  static HPolicy fixed(double h) { return HPolicy(h); }

  bool is_auto() const noexcept { return !fixed_; }
  double fixed_value() const { return fixed_.value(); }

 private:
  explicit HPolicy(std::optional<double> h) : fixed_(h) {}
  std::optional<double> fixed_;
};

struct SolverConfig {
  Interval bracket;
  HPolicy h = HPolicy::automatic();
  Tolerance tol{};
  bool filter_spurious = true;
};

enum class RootMethod { kIdentity, kOracle };

std::string_view to_string(RootMethod m);

struct RootResult {
  double root = 0.0;
  double residual_at_root = 0.0;  // R(root; h) for identity, f(root) for the oracle
  double f_at_root = 0.0;
  int iterations = 0;
  double h_used = 0.0;
  bool spurious_filtered = false;
  RootMethod method = RootMethod::kIdentity;
};

/// Largest |f(root)| accepted as a genuine root: 1e4 * tol.scale(root) * (1 + |f'(root)|).
/// The slope term converts the bracket-width stopping rule into a value bound.
double root_acceptance_threshold(const FunctionModel& model, double root, const Tolerance& tol);

/// Root of f from the zeros of R(alpha; h) over config.bracket.
///
/// The model must pass validate_model (Error(kAdmissibility) otherwise). R is
/// sampled on a 64-panel grid from bracket.lo and the first sign change whose
/// refined zero is a genuine root of f is returned. Since R = -alpha f(alpha),
/// alpha = 0 is always a zero of R; when 0 lies in the bracket and f(0) is not
/// ~0 a small neighbourhood of 0 is excluded and spurious_filtered is set.
///
/// Errors: Error(kBracket) when R never changes sign, Error(kNoRootInBracket)
/// when only the spurious zero exists, ConvergenceError when the search stalls.
RootResult solve_identity(const FunctionModel& model, const SolverConfig& config);

/// Plain bisection on f; the classical baseline.
RootResult solve_oracle_bisect(const FunctionModel& model, const Interval& bracket,
                               const Tolerance& tol = {});

/// Either a result or the error a method raised.
struct MethodOutcome {
  std::optional<RootResult> result;
  std::optional<ErrorKind> error;
  std::string message;

  bool ok() const noexcept { return result.has_value(); }
};

struct ComparisonReport {
  MethodOutcome identity;
  MethodOutcome oracle;
  double difference = 0.0;  // |identity - oracle|, NaN unless both succeeded
  bool agree = false;       // difference <= 1e-9 (1 + |oracle root|)
};

ComparisonReport compare_methods(const FunctionModel& model, const SolverConfig& config);

}  // namespace invroot
