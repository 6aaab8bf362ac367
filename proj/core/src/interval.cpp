#include "invroot/interval.hpp"

#include <cmath>

#include <fmt/format.h>

#include "invroot/error.hpp"

namespace invroot {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("interval endpoints must be finite, got [{}, {}]", lo, hi));
  }
  if (!(lo < hi)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("interval requires lo < hi, got [{}, {}]", lo, hi));
  }
}

double Interval::sample(int i, int n) const noexcept {
  if (n <= 1) return midpoint();
  if (i <= 0) return lo_;
  if (i >= n - 1) return hi_;
  return lo_ + width() * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::string Interval::to_string() const { return fmt::format("[{:.17g}, {:.17g}]", lo_, hi_); }

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("abs_tol must be > 0, got {}", abs_tol));
  }
  if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("rel_tol must be >= 0, got {}", rel_tol));
  }
  if (max_iterations < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("max_iterations must be >= 1, got {}", max_iterations));
  }
}

double Tolerance::scale(double magnitude) const noexcept {
  return abs_tol + rel_tol * std::abs(magnitude);
}

}  // namespace invroot
