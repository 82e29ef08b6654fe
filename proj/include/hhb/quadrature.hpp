#pragma once

#include <cstddef>
#include <functional>

namespace hhb {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kDefaultMaxDepth = 60;

using RealFn = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

/// Adaptive 7/15-point Gauss-Kronrod integration of f over [lo, hi].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below tol. Nodes are strictly interior, so integrands that
/// blow up at an endpoint can be passed in; if such an integral diverges the
/// subdivision runs into max_depth and the result comes back with
/// converged == false. Throws Error(NonFinite) if f returns NaN or inf at a node.
QuadratureResult integrate(const RealFn& f, double lo, double hi, double tol = kDefaultTol,
                           int max_depth = kDefaultMaxDepth);

/// Integral mean (1/(b-a)) * int_a^b f with the error estimate scaled the same way.
/// Non-convergence is returned, not thrown.
QuadratureResult integral_mean(const RealFn& f, double a, double b, double tol = kDefaultTol);

/// Plain-value form of integral_mean. Throws DegenerateInterval when a >= b and
/// NoConvergence when the quadrature does not reach tol.
double mean_value(const RealFn& f, double a, double b, double tol = kDefaultTol);

}  // namespace hhb
