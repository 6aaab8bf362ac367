#pragma once

#include <string>

namespace invroot {

/// Closed interval [lo, hi] with finite endpoints and lo < hi.
class Interval {
 public:
  /// Throws Error(kInvalidArgument) for degenerate, reversed or non-finite input.
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }

  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }
  bool contains(const Interval& other) const noexcept {
    return other.lo_ >= lo_ && other.hi_ <= hi_;
  }

  /// Equispaced point i of n (i = 0 gives lo, i = n - 1 gives hi).
  double sample(int i, int n) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Stopping rule shared by the quadrature, inversion and root searches.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iterations = 200;

  /// Throws Error(kInvalidArgument) unless abs_tol > 0, rel_tol >= 0, max_iterations >= 1.
  void validate() const;

  /// abs_tol + rel_tol * |magnitude|
  double scale(double magnitude) const noexcept;
};

}  // namespace invroot
