#include "invroot/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "invroot/error.hpp"

namespace invroot {

std::string_view to_string(Capability c) {
  switch (c) {
    case Capability::kDerivative: return "derivative";
    case Capability::kInverse: return "inverse";
    case Capability::kAntiderivative: return "antiderivative";
    case Capability::kInverseAntiderivative: return "inverse_antiderivative";
  }
  return "unknown";
}

namespace {

RealFunction& slot(AnalyticParts& parts, Capability c) {
  switch (c) {
    case Capability::kDerivative: return parts.derivative;
    case Capability::kInverse: return parts.inverse;
    case Capability::kAntiderivative: return parts.antiderivative;
    case Capability::kInverseAntiderivative: return parts.inverse_antiderivative;
  }
  return parts.derivative;
}

double finite_or_throw(double v, double at, const std::string& name, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::kEvaluationDomain,
                fmt::format("{} of {} is non-finite ({}) at {:.17g}", what, name, v, at));
  }
  return v;
}

}  // namespace

FunctionModel::FunctionModel(std::string name, Interval domain, RealFunction f,
                             AnalyticParts analytic, std::optional<double> quadrature_anchor)
    : name_(std::move(name)),
      domain_(domain),
      f_(std::move(f)),
      analytic_(std::move(analytic)),
      anchor_(quadrature_anchor.value_or(domain.midpoint())) {
  if (!f_) throw Error(ErrorKind::kInvalidArgument, "function model needs a callable f");
  if (!domain_.contains(anchor_)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("quadrature anchor {:.17g} outside domain {}", anchor_,
                            domain_.to_string()));
  }
  const double f_lo = finite_or_throw(f_(domain_.lo()), domain_.lo(), name_, "value");
  const double f_hi = finite_or_throw(f_(domain_.hi()), domain_.hi(), name_, "value");
  if (f_hi > f_lo) {
    monotonicity_ = Monotonicity::kIncreasing;
  } else if (f_hi < f_lo) {
    monotonicity_ = Monotonicity::kDecreasing;
  } else {
    monotonicity_ = Monotonicity::kNotMonotone;
  }
  image_ = {std::min(f_lo, f_hi), std::max(f_lo, f_hi)};
}

bool FunctionModel::has_analytic(Capability c) const noexcept {
  auto copy = analytic_;
  return static_cast<bool>(slot(copy, c));
}

FunctionModel FunctionModel::without_analytic(std::initializer_list<Capability> drop) const {
  FunctionModel copy = *this;
  for (Capability c : drop) slot(copy.analytic_, c) = nullptr;
  return copy;
}

FunctionModel FunctionModel::with_analytic(Capability c, RealFunction fn) const {
  FunctionModel copy = *this;
  slot(copy.analytic_, c) = std::move(fn);
  return copy;
}

void FunctionModel::require_in_domain(double x, const char* what) const {
  if (!domain_.contains(x)) {
    throw Error(ErrorKind::kEvaluationDomain,
                fmt::format("{}: x = {:.17g} outside domain {} of {}", what, x,
                            domain_.to_string(), name_));
  }
}

void FunctionModel::require_in_image(double y, const char* what) const {
  if (!image_.contains(y)) {
    throw Error(ErrorKind::kRange,
                fmt::format("{}: y = {:.17g} outside image [{:.17g}, {:.17g}] of {}", what, y,
                            image_.lo, image_.hi, name_));
  }
}

double FunctionModel::value(double x) const {
  require_in_domain(x, "value");
  return finite_or_throw(f_(x), x, name_, "value");
}

double FunctionModel::derivative(double x) const {
  require_in_domain(x, "derivative");
  if (analytic_.derivative) {
    return finite_or_throw(analytic_.derivative(x), x, name_, "derivative");
  }
  return numeric::differentiate_numeric(f_, x, std::max(1.0, std::abs(x)), domain_);
}

double FunctionModel::inverse(double y) const {
  require_in_image(y, "inverse");
  if (analytic_.inverse) return finite_or_throw(analytic_.inverse(y), y, name_, "inverse");
  return numeric::invert_monotone(f_, domain_, y, inversion_tolerance());
}

double FunctionModel::antiderivative(double x) const {
  require_in_domain(x, "antiderivative");
  if (analytic_.antiderivative) {
    return finite_or_throw(analytic_.antiderivative(x), x, name_, "antiderivative");
  }
  return numeric::integrate(f_, anchor_, x, quadrature_tolerance());
}

double FunctionModel::inverse_antiderivative(double y) const {
  require_in_image(y, "inverse antiderivative");
  if (analytic_.inverse_antiderivative) {
    return finite_or_throw(analytic_.inverse_antiderivative(y), y, name_,
                           "inverse antiderivative");
  }
  return laisant_G(*this, y);
}

double laisant_G(const FunctionModel& model, double y) {
  const double x = model.inverse(y);
  return y * x - model.antiderivative(x);
}

double quadrature_G(const FunctionModel& model, double y) {
  if (!model.image().contains(y)) {
    throw Error(ErrorKind::kRange, fmt::format("quadrature_G: y = {:.17g} outside image", y));
  }
  const double base = model.value(model.quadrature_anchor());
  return numeric::integrate([&](double t) { return model.inverse(t); }, base, y,
                            FunctionModel::quadrature_tolerance());
}

bool ValidationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += "; ";
    out += c.criterion + ": " + c.detail;
  }
  return out;
}

namespace {

constexpr int kValidationSamples = 33;
constexpr int kMonotoneSamples = 257;
constexpr double kInverseThreshold = 1e-9;
constexpr double kDerivativeThreshold = 1e-6;
constexpr double kAntiderivativeThreshold = 1e-8;

// Runs one check; exceptions become a failed entry.
template <typename Body>
ValidationCheck run_check(std::string criterion, Body&& body) {
  ValidationCheck check;
  check.criterion = std::move(criterion);
  try {
    body(check);
  } catch (const Error& e) {
    check.passed = false;
    check.detail = fmt::format("{} ({})", e.what(), to_string(e.kind()));
  }
  return check;
}

std::vector<std::pair<double, double>> sample_pairs(const Interval& domain) {
  std::mt19937_64 rng(0x5eed1234u);
  std::uniform_real_distribution<double> dist(domain.lo(), domain.hi());
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(kValidationSamples);
  for (int i = 0; i < kValidationSamples; ++i) pairs.emplace_back(dist(rng), dist(rng));
  return pairs;
}

}  // namespace

ValidationReport validate_model(const FunctionModel& model) {
  ValidationReport report;
  const Interval& domain = model.domain();
  const auto& f = model.raw_function();

  report.checks.push_back(run_check("monotonicity", [&](ValidationCheck& c) {
    const Monotonicity sampled = numeric::check_monotone(f, domain, kMonotoneSamples);
    c.passed = sampled != Monotonicity::kNotMonotone && sampled == model.monotonicity();
    c.worst = c.passed ? 0.0 : 1.0;
    c.detail = c.passed ? std::string(to_string(sampled))
                        : fmt::format("sampled verdict is {} on {}; function is not one-to-one",
                                      to_string(sampled), domain.to_string());
  }));

  report.checks.push_back(run_check("inverse_round_trip", [&](ValidationCheck& c) {
    for (int i = 0; i < kValidationSamples; ++i) {
      const double x = domain.sample(i, kValidationSamples);
      const double back = model.inverse(model.value(x));
      c.worst = std::max(c.worst, std::abs(back - x) / (kInverseThreshold * (1.0 + std::abs(x))));
    }
    c.passed = c.worst <= 1.0;
    c.detail = fmt::format("max |f^-1(f(x)) - x| / (1e-9 (1 + |x|)) = {:.3g}", c.worst);
  }));

  if (model.has_analytic(Capability::kDerivative)) {
    report.checks.push_back(run_check("derivative_consistency", [&](ValidationCheck& c) {
      for (int i = 1; i + 1 < kValidationSamples; ++i) {
        const double x = domain.sample(i, kValidationSamples);
        const double analytic = model.derivative(x);
        const double numeric =
            numeric::differentiate_numeric(f, x, std::max(1.0, std::abs(x)), domain);
        c.worst = std::max(c.worst, std::abs(analytic - numeric) /
                                        (kDerivativeThreshold * (1.0 + std::abs(analytic))));
      }
      c.passed = c.worst <= 1.0;
      c.detail = fmt::format("max |f' - central difference| / (1e-6 (1 + |f'|)) = {:.3g}",
                             c.worst);
    }));
  }

  const auto pairs = sample_pairs(domain);
  const Tolerance quad = FunctionModel::quadrature_tolerance();

  report.checks.push_back(run_check("antiderivative_consistency", [&](ValidationCheck& c) {
    for (const auto& [a, b] : pairs) {
      const double delta = model.antiderivative(b) - model.antiderivative(a);
      const double area = numeric::integrate(f, a, b, quad);
      c.worst = std::max(c.worst, std::abs(delta - area) /
                                      (kAntiderivativeThreshold * (1.0 + std::abs(delta))));
    }
    c.passed = c.worst <= 1.0;
    c.detail = fmt::format("max |dF - integral f| / (1e-8 (1 + |dF|)) = {:.3g}", c.worst);
  }));

  report.checks.push_back(run_check("inverse_antiderivative_consistency", [&](ValidationCheck& c) {
    auto inverse = [&](double y) { return model.inverse(y); };
    for (const auto& [a, b] : pairs) {
      const double ya = model.value(a);
      const double yb = model.value(b);
      const double delta = model.inverse_antiderivative(yb) - model.inverse_antiderivative(ya);
      const double area = numeric::integrate(inverse, ya, yb, quad);
      c.worst = std::max(c.worst, std::abs(delta - area) /
                                      (kAntiderivativeThreshold * (1.0 + std::abs(delta))));
    }
    c.passed = c.worst <= 1.0;
    c.detail = fmt::format("max |dG - integral f^-1| / (1e-8 (1 + |dG|)) = {:.3g}", c.worst);
  }));

  return report;
}

}  // namespace invroot
