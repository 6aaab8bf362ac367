#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "invroot/interval.hpp"
#include "invroot/numeric.hpp"

namespace invroot {

/// Derived capabilities a model may carry in closed form.
enum class Capability { kDerivative, kInverse, kAntiderivative, kInverseAntiderivative };

std::string_view to_string(Capability c);

/// Closed-form pieces of a model. Empty members are synthesized numerically.
struct AnalyticParts {
  RealFunction derivative;
  RealFunction inverse;                 // on the image interval
  RealFunction antiderivative;          // F, any constant
  RealFunction inverse_antiderivative;  // G, any constant
};

/// [f(domain.lo), f(domain.hi)] sorted ascending.
struct ImageInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double y) const noexcept { return y >= lo && y <= hi; }
};

/// A strictly monotone function on a closed interval together with f', f^-1,
/// F and G.
///
/// Capabilities resolve as: closed form when supplied, otherwise
///   f'   central differences kept inside the domain,
///   f^-1 bracketed inversion over the domain,
///   F    quadrature from the anchor (F(anchor) = 0),
///   G    y * f^-1(y) - F(f^-1(y)).
/// F and G are only meaningful up to additive constants; consumers take
/// differences.
///
/// Construction only requires f to be finite at the two endpoints; strict
/// monotonicity is checked by validate_model. Models are immutable and safe to share across threads.
class FunctionModel {
 public:
  FunctionModel(std::string name, Interval domain, RealFunction f, AnalyticParts analytic = {},
                std::optional<double> quadrature_anchor = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }
  const ImageInterval& image() const noexcept { return image_; }
  /// Direction from the endpoint values (kNotMonotone when they are equal).
  Monotonicity monotonicity() const noexcept { return monotonicity_; }
  double quadrature_anchor() const noexcept { return anchor_; }

  bool has_analytic(Capability c) const noexcept;

  /// Copy with the listed closed forms dropped, so they fall back to numerics.
  FunctionModel without_analytic(std::initializer_list<Capability> drop) const;
  /// Copy with one closed form replaced.
  FunctionModel with_analytic(Capability c, RealFunction fn) const;

  /// f(x); Error(kEvaluationDomain) outside the domain or on non-finite values.
  double value(double x) const;
  double derivative(double x) const;
  /// f^-1(y); Error(kRange) outside the image interval.
  double inverse(double y) const;
  /// F(x)
  double antiderivative(double x) const;
  /// G(y)
  double inverse_antiderivative(double y) const;

  /// Unchecked f, for use as a quadrature or search integrand.
  const RealFunction& raw_function() const noexcept { return f_; }

  /// Tolerances used by the synthesized capabilities.
  static Tolerance inversion_tolerance() { return {1e-15, 4e-16, 400}; }
  static Tolerance quadrature_tolerance() { return {1e-13, 1e-13, 200}; }

 private:
  void require_in_domain(double x, const char* what) const;
  void require_in_image(double y, const char* what) const;

  std::string name_;
  Interval domain_;
  RealFunction f_;
  AnalyticParts analytic_;
  double anchor_;
  ImageInterval image_;
  Monotonicity monotonicity_;
};

/// G(y) = y * f^-1(y) - F(f^-1(y)), built from the model's inverse and F.
double laisant_G(const FunctionModel& model, double y);

/// G(y) as the oriented integral of f^-1 from f(anchor) to y.
double quadrature_G(const FunctionModel& model, double y);

/// One admissibility criterion.
struct ValidationCheck {
  std::string criterion;
  bool passed = false;
  double worst = 0.0;  // largest normalized violation seen (threshold-relative < 1 passes)
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const noexcept;
  /// Failed criteria joined into one line; empty when everything passed.
  std::string failures() const;
};

/// Checks monotonicity, inverse round trip, derivative sanity, F and G
/// consistency against quadrature on 33 deterministic sample points.
/// Failures are report entries, never exceptions.
ValidationReport validate_model(const FunctionModel& model);

}  // namespace invroot
