#include "hhb/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "hhb/error.hpp"

namespace hhb {

std::string_view to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::convex: return "convex";
    case FunctionClass::godunova_levin: return "godunova_levin";
    case FunctionClass::p_class: return "p_class";
    case FunctionClass::s_convex: return "s_convex";
    case FunctionClass::h_convex: return "h_convex";
    case FunctionClass::h_concave: return "h_concave";
  }
  return "unknown";
}

FunctionClass parse_function_class(std::string_view text) {
  if (text == "convex") return FunctionClass::convex;
  if (text == "godunova_levin" || text == "Q") return FunctionClass::godunova_levin;
  if (text == "p_class" || text == "P") return FunctionClass::p_class;
  if (text == "s_convex" || text == "Ks2") return FunctionClass::s_convex;
  if (text == "h_convex" || text == "SX") return FunctionClass::h_convex;
  if (text == "h_concave" || text == "SV") return FunctionClass::h_concave;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown function class '{}'", text));
}

namespace {

std::vector<double> closed_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "class grids need at least 2 points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

std::vector<double> open_unit_grid(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "class grids need at least 1 point");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  return g;
}

void require_nonnegative(const FunctionSpec& f, const std::vector<double>& values,
                         const std::vector<double>& xs) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < -kViolationTol) {
      throw Error(ErrorKind::NegativeFunction,
                  fmt::format("{}({:.17g}) = {:.17g} < 0", f.label(), xs[i], values[i]));
    }
  }
}

// Absolute tolerance, widened in proportion to the magnitude of the right-hand side.
bool violates(double lhs, double rhs) {
  return lhs - rhs > kViolationTol * std::max(1.0, std::abs(rhs));
}

}  // namespace

MembershipVerdict test_membership(const FunctionSpec& f, FunctionClass cls,
                                  const std::optional<HKernel>& h, std::optional<double> s,
                                  ClassGrid grid) {
  if ((cls == FunctionClass::h_convex || cls == FunctionClass::h_concave) && !h) {
    throw Error(ErrorKind::ClassRequiresKernel,
                fmt::format("class {} needs a kernel h", to_string(cls)));
  }
  if (cls == FunctionClass::s_convex) {
    if (!s) throw Error(ErrorKind::ClassRequiresS, "class s_convex needs s");
    if (!(*s > 0.0 && *s <= 1.0)) {
      throw Error(ErrorKind::BadExponent, fmt::format("s-convexity needs s in (0,1], got {}", *s));
    }
  }

  const Interval& dom = f.domain();
  const std::vector<double> xs = closed_grid(dom.a(), dom.b(), grid.x);
  const std::vector<double> ys = closed_grid(dom.a(), dom.b(), grid.y);
  const bool open_t = cls == FunctionClass::godunova_levin ||
                      ((cls == FunctionClass::h_convex || cls == FunctionClass::h_concave) &&
                       h->endpoint_singular());
  const std::vector<double> ts = open_t ? open_unit_grid(grid.t) : closed_grid(0.0, 1.0, grid.t);

  std::vector<double> fx(xs.size());
  std::vector<double> fy(ys.size());
  std::transform(xs.begin(), xs.end(), fx.begin(), [&](double u) { return f.eval(u); });
  std::transform(ys.begin(), ys.end(), fy.begin(), [&](double u) { return f.eval(u); });
  if (cls != FunctionClass::convex) {
    require_nonnegative(f, fx, xs);
    require_nonnegative(f, fy, ys);
  }

  // Weights (w(t), w(1-t)) multiplying f(x) and f(y) on the right-hand side.
  std::vector<std::pair<double, double>> weights(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double t = ts[k];
    switch (cls) {
      case FunctionClass::convex: weights[k] = {t, 1.0 - t}; break;
      case FunctionClass::godunova_levin: weights[k] = {1.0 / t, 1.0 / (1.0 - t)}; break;
      case FunctionClass::p_class: weights[k] = {1.0, 1.0}; break;
      case FunctionClass::s_convex: weights[k] = {std::pow(t, *s), std::pow(1.0 - t, *s)}; break;
      case FunctionClass::h_convex:
      case FunctionClass::h_concave: weights[k] = {(*h)(t), (*h)(1.0 - t)}; break;
    }
  }

  MembershipVerdict verdict;
  verdict.class_name = cls;
  verdict.resolution = grid;
  double min_slack = std::numeric_limits<double>::infinity();
  const bool reversed = cls == FunctionClass::h_concave;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts[k];
        const double combined = f.eval(t * xs[i] + (1.0 - t) * ys[j]);
        const double bound = weights[k].first * fx[i] + weights[k].second * fy[j];
        const double lhs = reversed ? bound : combined;
        const double rhs = reversed ? combined : bound;
        min_slack = std::min(min_slack, rhs - lhs);
        if (verdict.holds && violates(lhs, rhs)) {
          verdict.holds = false;
          verdict.witness = Witness{xs[i], ys[j], t};
        }
      }
    }
  }
  verdict.min_slack = min_slack;
  return verdict;
}

InclusionChainReport verify_inclusion_chain(const FunctionSpec& f, const HKernel& h,
                                            ClassGrid grid) {
  const DominanceCheck dom = check_dominates_identity(h);
  if (!dom.holds) {
    throw Error(ErrorKind::HypothesisFailed,
                fmt::format("kernel {} violates h(a) >= a at a={:.17g}", h.label(), *dom.witness));
  }
  const Interval& d = f.domain();
  const std::vector<double> xs = closed_grid(d.a(), d.b(), grid.x);
  const std::vector<double> ys = closed_grid(d.a(), d.b(), grid.y);
  const std::vector<double> alphas = open_unit_grid(grid.t);

  std::vector<double> fx(xs.size());
  std::vector<double> fy(ys.size());
  std::transform(xs.begin(), xs.end(), fx.begin(), [&](double u) { return f.eval(u); });
  std::transform(ys.begin(), ys.end(), fy.begin(), [&](double u) { return f.eval(u); });
  require_nonnegative(f, fx, xs);
  require_nonnegative(f, fy, ys);

  InclusionChainReport report;
  report.min_slack_convexity = std::numeric_limits<double>::infinity();
  report.min_slack_domination = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      for (const double alpha : alphas) {
        const double combined = f.eval(alpha * xs[i] + (1.0 - alpha) * ys[j]);
        const double chord = alpha * fx[i] + (1.0 - alpha) * fy[j];
        const double kernel_side = h(alpha) * fx[i] + h(1.0 - alpha) * fy[j];
        report.min_slack_convexity = std::min(report.min_slack_convexity, chord - combined);
        report.min_slack_domination = std::min(report.min_slack_domination, kernel_side - chord);
        const bool first_bad = violates(combined, chord);
        const bool second_bad = violates(chord, kernel_side);
        if (first_bad) report.convexity_holds = false;
        if (second_bad) report.domination_holds = false;
        if ((first_bad || second_bad) && !report.witness) {
          report.witness = Witness{xs[i], ys[j], alpha};
        }
      }
    }
  }
  report.holds = report.convexity_holds && report.domination_holds;
  report.reported_slack = std::max(report.min_slack_convexity, report.min_slack_domination);
  return report;
}

}  // namespace hhb
