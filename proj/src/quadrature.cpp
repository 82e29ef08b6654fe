#include "hhb/quadrature.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <fmt/format.h>

#include "hhb/error.hpp"

namespace hhb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::DivergentKernel: return "DivergentKernel";
    case ErrorKind::ClassRequiresKernel: return "ClassRequiresKernel";
    case ErrorKind::ClassRequiresS: return "ClassRequiresS";
    case ErrorKind::NegativeFunction: return "NegativeFunction";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::ExcludedExponent: return "ExcludedExponent";
  }
  return "Unknown";
}

namespace {

// Kronrod abscissae on [-1,1] (non-negative half) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Hard cap on live segments; divergent integrands stop on depth long before this.
constexpr std::size_t kMaxSegments = 200000;

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

double checked(const RealFn& f, double u) {
  const double y = f(u);
  if (!std::isfinite(y)) {
    throw Error(ErrorKind::NonFinite, fmt::format("integrand is {} at t={:.17g}", y, u));
  }
  return y;
}

// Halves this narrow would put Kronrod nodes on top of the segment ends.
bool unresolvable(double lo, double hi) {
  const double scale = std::max(std::abs(lo), std::abs(hi));
  return hi - lo < 1024.0 * std::numeric_limits<double>::epsilon() * scale;
}

Segment gauss_kronrod(const RealFn& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

}  // namespace

QuadratureResult integrate(const RealFn& f, double lo, double hi, double tol, int max_depth) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("integration bounds [{}, {}]", lo, hi));
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("tolerance must be positive, got {}", tol));
  }
  QuadratureResult result;
  if (lo == hi) return result;

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  heap.push(gauss_kronrod(f, lo, hi, 0));
  std::size_t evaluations = 15;
  double total_error = heap.top().error;
  bool stuck = false;

  while (total_error > tol) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.depth >= max_depth || heap.size() >= kMaxSegments || unresolvable(worst.lo, worst.hi)) {
      stuck = true;
      break;
    }
    heap.pop();
    const Segment left = gauss_kronrod(f, worst.lo, mid, worst.depth + 1);
    const Segment right = gauss_kronrod(f, mid, worst.hi, worst.depth + 1);
    evaluations += 30;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments so the running error total cannot drift.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  double value = 0.0;
  double error = 0.0;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    value += it->value;
    error += it->error;
  }
  result.value = value;
  result.abs_error_estimate = error;
  result.converged = !stuck && error <= tol;
  result.evaluations = evaluations;
  return result;
}

QuadratureResult integral_mean(const RealFn& f, double a, double b, double tol) {
  if (!(a < b)) {
    throw Error(ErrorKind::DegenerateInterval,
                fmt::format("integral mean needs a < b, got [{:.17g}, {:.17g}]", a, b));
  }
  QuadratureResult r = integrate(f, a, b, tol);
  const double width = b - a;
  r.value /= width;
  r.abs_error_estimate /= width;
  return r;
}

double mean_value(const RealFn& f, double a, double b, double tol) {
  const QuadratureResult r = integral_mean(f, a, b, tol);
  if (!r.converged) {
    throw Error(ErrorKind::NoConvergence,
                fmt::format("integral over [{:.17g}, {:.17g}] did not reach tol {}", a, b, tol));
  }
  return r.value;
}

}  // namespace hhb
