#include "invroot/identity.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "invroot/error.hpp"

namespace invroot {

double rectangle_residual_full(const FunctionModel& model, double a, double b) {
  const double fa = model.value(a);
  const double fb = model.value(b);
  const Tolerance quad = FunctionModel::quadrature_tolerance();
  const double under = numeric::integrate(model.raw_function(), a, b, quad);
  const double left =
      numeric::integrate([&](double y) { return model.inverse(y); }, fa, fb, quad);
  return (b * fb - a * fa) - under - left;
}

double root_residual(const FunctionModel& model, double alpha, double h) {
  if (h == 0.0) {
    throw Error(ErrorKind::kDegenerateOffset, "residual offset h must be nonzero");
  }
  if (!std::isfinite(h)) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("residual offset h = {} not finite", h));
  }
  const double shifted = alpha + h;
  const double f_alpha = model.value(alpha);
  const double f_shifted = model.value(shifted);
  const double area_under = model.antiderivative(shifted) - model.antiderivative(alpha);
  const double area_left =
      model.inverse_antiderivative(f_shifted) - model.inverse_antiderivative(f_alpha);
  return area_under + area_left - shifted * f_shifted;
}

HSweep h_sweep(const FunctionModel& model, double alpha, std::span<const double> offsets) {
  if (offsets.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "h_sweep needs at least one offset");
  }
  HSweep sweep;
  sweep.samples.reserve(offsets.size());
  for (double h : offsets) {
    sweep.samples.push_back({alpha, h, root_residual(model, alpha, h)});
  }
  const auto [lo, hi] = std::minmax_element(
      sweep.samples.begin(), sweep.samples.end(),
      [](const ResidualSample& l, const ResidualSample& r) { return l.value < r.value; });
  sweep.max_spread = hi->value - lo->value;
  return sweep;
}

double default_offset(const FunctionModel& model, double alpha) {
  const Interval& domain = model.domain();
  if (!domain.contains(alpha)) {
    throw Error(ErrorKind::kEvaluationDomain,
                fmt::format("alpha = {:.17g} outside domain {}", alpha, domain.to_string()));
  }
  const double target = 0.25 * domain.width();
  const double room_right = domain.hi() - alpha;
  const double room_left = alpha - domain.lo();
  if (room_right > target) return target;
  if (room_left > target) return -target;
  return room_right >= room_left ? 0.5 * room_right : -0.5 * room_left;
}

}  // namespace invroot
