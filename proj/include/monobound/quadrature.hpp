#pragma once

#include <functional>
#include <span>

namespace monobound {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b]
/// with an absolute error target. `breakpoints` inside (a, b) seed the
/// initial subdivision (kinks of piecewise-linear integrands).
/// Throws Error(ToleranceNotReached) carrying the best estimate when the
/// subdivision budget runs out first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, std::span<const double> breakpoints = {});

}  // namespace monobound
