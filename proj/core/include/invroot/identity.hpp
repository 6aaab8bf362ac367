#pragma once

#include <span>
#include <vector>

#include "invroot/function_model.hpp"

namespace invroot {

// Rectangle decomposition for a strictly monotone f on [a, b]:
//
//   b f(b) - a f(a) = int_a^b f(x) dx + int_{f(a)}^{f(b)} f^-1(y) dy
//
// i.e. the area under the curve plus the area to its left fill the
// difference of the two corner rectangles. With oriented integrals this
// holds for decreasing f and for a > b as well. Written with antiderivatives
// at a = alpha, b = alpha + h:
//
//   R(alpha; h) = F(alpha+h) - F(alpha) + G(f(alpha+h)) - G(f(alpha))
//                 - (alpha+h) f(alpha+h)
//               = -alpha f(alpha)
//
// for every h, so the h -> 0 limit is never needed numerically and the zeros
// of R are the zeros of alpha f(alpha).

/// One evaluation of R.
struct ResidualSample {
  double alpha = 0.0;
  double h = 0.0;
  double value = 0.0;
};

struct HSweep {
  std::vector<ResidualSample> samples;
  double max_spread = 0.0;  // max - min of the sampled values
};

/// [b f(b) - a f(a)] - int_a^b f - int_{f(a)}^{f(b)} f^-1, both integrals by
/// direct quadrature (F and G are not consulted). Zero up to quadrature error.
double rectangle_residual_full(const FunctionModel& model, double a, double b);

/// R(alpha; h) from the model's F and G. Error(kDegenerateOffset) for h == 0;
/// Error(kEvaluationDomain) unless alpha and alpha + h lie in the domain.
double root_residual(const FunctionModel& model, double alpha, double h);

/// R at each offset plus the spread of the values.
HSweep h_sweep(const FunctionModel& model, double alpha, std::span<const double> offsets);

/// A quarter of the domain width, shrunk (and flipped to the left if there is
/// more room there) so that alpha + h stays strictly inside the domain.
double default_offset(const FunctionModel& model, double alpha);

}  // namespace invroot
