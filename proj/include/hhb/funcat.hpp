#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace hhb {

/// Closed interval [a, b] with a < b and an optional interior evaluation point x.
class Interval {
 public:
  /// Throws DegenerateInterval unless a < b, DomainViolation if x lies outside [a, b].
  Interval(double a, double b, std::optional<double> x = std::nullopt);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  const std::optional<double>& x() const noexcept { return x_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }

  /// Interior point, or DomainViolation if none was given.
  double point() const;

  Interval with_point(double x) const { return Interval(a_, b_, x); }
  Interval without_point() const { return Interval(a_, b_); }

  /// Membership with a few ulps of slack so that convex combinations of
  /// endpoints are never rejected because of rounding.
  bool contains(double u) const noexcept;

 private:
  double a_;
  double b_;
  std::optional<double> x_;
};

enum class FunctionKind { power, reciprocal, exponent, affine, user };
enum class DerivativeMode { closed_form, central_difference };

/// An evaluable test function f with its first derivative.
class FunctionSpec {
 public:
  static FunctionSpec power(int n, Interval domain);
  static FunctionSpec reciprocal(Interval domain);
  static FunctionSpec exponent(Interval domain);
  static FunctionSpec affine(double c0, double c1, Interval domain);
  /// User closure; its derivative is a central difference with step 1e-6 * (b - a).
  static FunctionSpec user(std::string label, std::function<double(double)> fn, Interval domain);

  /// Same function, derivative switched to a central difference with the given step.
  FunctionSpec with_central_difference(double step) const;
  /// Same function over a different domain; re-validates the domain guards.
  FunctionSpec on(Interval domain) const;

  double eval(double u) const;
  double eval_deriv(double u) const;

  FunctionKind kind() const noexcept { return kind_; }
  DerivativeMode derivative_mode() const noexcept { return mode_; }
  double step() const noexcept { return step_; }
  const Interval& domain() const noexcept { return domain_; }
  int exponent_n() const noexcept { return n_; }
  const std::string& label() const noexcept { return label_; }

 private:
  FunctionSpec(FunctionKind kind, std::string label, Interval domain);

  double raw(double u) const;
  double raw_deriv(double u) const;
  void validate_domain() const;

  FunctionKind kind_;
  std::string label_;
  Interval domain_;
  DerivativeMode mode_ = DerivativeMode::closed_form;
  double step_ = 0.0;
  int n_ = 1;
  double c0_ = 0.0;
  double c1_ = 0.0;
  std::shared_ptr<const std::function<double(double)>> closure_;
};

/// Parses `poly:n`, `recip`, `exp`, `affine:c0,c1` onto the given domain.
/// Throws InvalidArgument on unknown syntax.
FunctionSpec parse_function(std::string_view text, Interval domain);

}  // namespace hhb
