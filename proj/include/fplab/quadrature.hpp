#pragma once

#include <functional>

namespace fplab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) integral of `f` over [a, b].
///
/// Throws fplab::Error when the integrand returns a non-finite value or the
/// error estimate stays above `abs_tol` after `max_depth` bisection levels.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, unsigned max_depth = 30);

}  // namespace fplab
