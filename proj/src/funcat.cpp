#include "hhb/funcat.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "hhb/error.hpp"

namespace hhb {

Interval::Interval(double a, double b, std::optional<double> x) : a_(a), b_(b), x_(x) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw Error(ErrorKind::DegenerateInterval,
                fmt::format("interval needs finite a < b, got [{:.17g}, {:.17g}]", a, b));
  }
  if (x_ && !(a <= *x_ && *x_ <= b)) {
    throw Error(ErrorKind::DomainViolation,
                fmt::format("x={:.17g} outside [{:.17g}, {:.17g}]", *x_, a, b));
  }
}

double Interval::point() const {
  if (!x_) throw Error(ErrorKind::DomainViolation, "interior point x is required");
  return *x_;
}

bool Interval::contains(double u) const noexcept {
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max({1.0, std::abs(a_), std::abs(b_)});
  return u >= a_ - slack && u <= b_ + slack;
}

FunctionSpec::FunctionSpec(FunctionKind kind, std::string label, Interval domain)
    : kind_(kind), label_(std::move(label)), domain_(domain) {}

void FunctionSpec::validate_domain() const {
  const bool needs_positive =
      kind_ == FunctionKind::reciprocal || (kind_ == FunctionKind::power && n_ < 0);
  if (needs_positive && !(domain_.a() > 0.0)) {
    throw Error(ErrorKind::DomainViolation,
                fmt::format("{} requires a strictly positive domain, got [{:.17g}, {:.17g}]",
                            label_, domain_.a(), domain_.b()));
  }
}

FunctionSpec FunctionSpec::power(int n, Interval domain) {
  FunctionSpec f(FunctionKind::power, fmt::format("poly:{}", n), domain);
  f.n_ = n;
  f.validate_domain();
  return f;
}

FunctionSpec FunctionSpec::reciprocal(Interval domain) {
  FunctionSpec f(FunctionKind::reciprocal, "recip", domain);
  f.validate_domain();
  return f;
}

FunctionSpec FunctionSpec::exponent(Interval domain) {
  return FunctionSpec(FunctionKind::exponent, "exp", domain);
}

FunctionSpec FunctionSpec::affine(double c0, double c1, Interval domain) {
  FunctionSpec f(FunctionKind::affine, fmt::format("affine:{},{}", c0, c1), domain);
  f.c0_ = c0;
  f.c1_ = c1;
  return f;
}

FunctionSpec FunctionSpec::user(std::string label, std::function<double(double)> fn,
                                Interval domain) {
  if (!fn) throw Error(ErrorKind::InvalidArgument, "user function closure is empty");
  FunctionSpec f(FunctionKind::user, std::move(label), domain);
  f.closure_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
  f.mode_ = DerivativeMode::central_difference;
  f.step_ = 1e-6 * domain.length();
  return f;
}

FunctionSpec FunctionSpec::with_central_difference(double step) const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("central difference step must be positive, got {}", step));
  }
  FunctionSpec f = *this;
  f.mode_ = DerivativeMode::central_difference;
  f.step_ = step;
  return f;
}

FunctionSpec FunctionSpec::on(Interval domain) const {
  FunctionSpec f = *this;
  f.domain_ = domain.without_point();
  if (f.kind_ == FunctionKind::user && f.mode_ == DerivativeMode::central_difference) {
    f.step_ = 1e-6 * domain.length();
  }
  f.validate_domain();
  return f;
}

double FunctionSpec::raw(double u) const {
  switch (kind_) {
    case FunctionKind::power: return std::pow(u, n_);
    case FunctionKind::reciprocal: return 1.0 / u;
    case FunctionKind::exponent: return std::exp(u);
    case FunctionKind::affine: return c0_ + c1_ * u;
    case FunctionKind::user: return (*closure_)(u);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double FunctionSpec::raw_deriv(double u) const {
  switch (kind_) {
    case FunctionKind::power: return n_ == 0 ? 0.0 : n_ * std::pow(u, n_ - 1);
    case FunctionKind::reciprocal: return -1.0 / (u * u);
    case FunctionKind::exponent: return std::exp(u);
    case FunctionKind::affine: return c1_;
    case FunctionKind::user: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double FunctionSpec::eval(double u) const {
  if (!domain_.contains(u)) {
    throw Error(ErrorKind::DomainViolation,
                fmt::format("{} evaluated at {:.17g} outside [{:.17g}, {:.17g}]", label_, u,
                            domain_.a(), domain_.b()));
  }
  const double y = raw(u);
  if (!std::isfinite(y)) {
    throw Error(ErrorKind::NonFinite, fmt::format("{}({:.17g}) = {}", label_, u, y));
  }
  return y;
}

double FunctionSpec::eval_deriv(double u) const {
  if (!domain_.contains(u)) {
    throw Error(ErrorKind::DomainViolation,
                fmt::format("{}' evaluated at {:.17g} outside [{:.17g}, {:.17g}]", label_, u,
                            domain_.a(), domain_.b()));
  }
  // The stencil may step just past an endpoint; the raw formula is used there.
  const double y = mode_ == DerivativeMode::closed_form
                       ? raw_deriv(u)
                       : (raw(u + step_) - raw(u - step_)) / (2.0 * step_);
  if (!std::isfinite(y)) {
    throw Error(ErrorKind::NonFinite, fmt::format("{}'({:.17g}) = {}", label_, u, y));
  }
  return y;
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view whole) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("cannot parse '{}' in '{}'", text, whole));
  }
  return value;
}

}  // namespace

FunctionSpec parse_function(std::string_view text, Interval domain) {
  domain = domain.without_point();
  if (text == "recip") return FunctionSpec::reciprocal(domain);
  if (text == "exp") return FunctionSpec::exponent(domain);
  if (text.starts_with("poly:")) {
    return FunctionSpec::power(parse_number<int>(text.substr(5), text), domain);
  }
  if (text.starts_with("affine:")) {
    const std::string_view args = text.substr(7);
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("affine needs c0,c1: '{}'", text));
    }
    return FunctionSpec::affine(parse_number<double>(args.substr(0, comma), text),
                                parse_number<double>(args.substr(comma + 1), text), domain);
  }
  throw Error(ErrorKind::InvalidArgument,
              fmt::format("unknown function '{}' (expected poly:n, recip, exp, affine:c0,c1)", text));
}

}  // namespace hhb
