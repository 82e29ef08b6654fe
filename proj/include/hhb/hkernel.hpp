#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "hhb/quadrature.hpp"

namespace hhb {

enum class KernelKind { identity, power, one, godunova, power_general, user };

/// The four kernel integrals every bound is written in terms of.
struct MomentSet {
  QuadratureResult m_t;     // int_0^1 h(t) dt
  QuadratureResult m_1mt;   // int_0^1 h(1-t) dt
  QuadratureResult m_prod;  // int_0^1 h((1-t)t) dt
  QuadratureResult m_sq;    // int_0^1 h((1-t)^2) dt

  bool all_converged() const noexcept {
    return m_t.converged && m_1mt.converged && m_prod.converged && m_sq.converged;
  }
  double total_error() const noexcept {
    return m_t.abs_error_estimate + m_1mt.abs_error_estimate + m_prod.abs_error_estimate +
           m_sq.abs_error_estimate;
  }
};

/// A nonnegative kernel h evaluated on (0, 1]. Copies share one moment cache.
class HKernel {
 public:
  static HKernel identity();
  /// h(t) = t^s, s > 0.
  static HKernel power(double s);
  static HKernel one();
  /// h(t) = 1/t; endpoint-singular, all moments diverge.
  static HKernel godunova();
  /// h(t) = t^k for any real k.
  static HKernel power_general(double k);
  static HKernel user(std::string label, std::function<double(double)> fn);

  double operator()(double t) const;

  KernelKind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  const std::string& label() const noexcept { return label_; }

  /// True when h is not finite at t = 0, so t-grids must stay open.
  bool endpoint_singular() const;

  /// Moments at the given tolerance, computed at most once per tolerance.
  const MomentSet& moments(double tol = kDefaultTol) const;

 private:
  struct Cache;
  HKernel(KernelKind kind, std::string label, double param);

  KernelKind kind_;
  std::string label_;
  double param_ = 0.0;
  std::shared_ptr<const std::function<double(double)>> closure_;
  std::shared_ptr<Cache> cache_;
};

/// Computes the four moments. Divergent entries come back with converged == false;
/// they are never capped to a finite converged value.
MomentSet moments(const HKernel& h, double tol = kDefaultTol);

struct SupermultiplicativeCheck {
  bool holds = true;
  std::optional<std::pair<double, double>> witness;
  std::size_t grid = 0;
};

struct DominanceCheck {
  bool holds = true;
  std::optional<double> witness;
  std::size_t grid = 0;
};

inline constexpr std::size_t kDefaultKernelGrid = 1001;
inline constexpr double kKernelCheckTol = 1e-9;

/// Samples h(xy) >= h(x)h(y) on the grid {i/(grid-1)}, i = 1..grid-1, squared.
/// holds == true means no counterexample at this resolution; the witness is the
/// most violating pair.
SupermultiplicativeCheck check_supermultiplicative(const HKernel& h,
                                                   std::size_t grid = kDefaultKernelGrid);

/// Samples h(alpha) >= alpha at the interior points of {i/(grid-1)}; the witness
/// is the most violating alpha.
DominanceCheck check_dominates_identity(const HKernel& h, std::size_t grid = kDefaultKernelGrid);

/// Parses `id`, `power:s`, `one`, `godunova`, `powk:k`; a leading `h=` is accepted.
HKernel parse_kernel(std::string_view text);

}  // namespace hhb
