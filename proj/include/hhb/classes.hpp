#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "hhb/funcat.hpp"
#include "hhb/hkernel.hpp"

namespace hhb {

enum class FunctionClass { convex, godunova_levin, p_class, s_convex, h_convex, h_concave };

std::string_view to_string(FunctionClass c);
/// Accepts the names above (and the short forms Q, P, Ks2, SX, SV).
FunctionClass parse_function_class(std::string_view text);

struct ClassGrid {
  std::size_t x = 41;
  std::size_t y = 41;
  std::size_t t = 41;
};

struct Witness {
  double x;
  double y;
  double t;
};

struct MembershipVerdict {
  FunctionClass class_name = FunctionClass::convex;
  bool holds = true;
  std::optional<Witness> witness;
  ClassGrid resolution;
  /// Smallest rhs - lhs seen over the grid (negative when violated).
  double min_slack = 0.0;
};

inline constexpr double kViolationTol = 1e-9;

/// Exhaustive check of the defining inequality over an (x, y, t) grid on f's
/// domain; the first violation in x-major order becomes the witness.
///
/// The t-grid is closed [0,1] except for Q(I) and for kernels that are not
/// finite at 0, where it is the open grid {i/(n+1)}. Classes Q, P, K_s^2, SX
/// and SV require f >= 0 on the x-grid (NegativeFunction otherwise).
MembershipVerdict test_membership(const FunctionSpec& f, FunctionClass cls,
                                  const std::optional<HKernel>& h = std::nullopt,
                                  std::optional<double> s = std::nullopt, ClassGrid grid = {});

struct InclusionChainReport {
  bool holds = true;
  bool convexity_holds = true;   // f(ax+(1-a)y) <= a f(x) + (1-a) f(y)
  bool domination_holds = true;  // a f(x) + (1-a) f(y) <= h(a) f(x) + h(1-a) f(y)
  double min_slack_convexity = 0.0;
  double min_slack_domination = 0.0;
  double reported_slack = 0.0;  // larger of the two minima
  std::optional<Witness> witness;
};

/// Checks both links of the chain convex => SX(h) pointwise on the grid, with
/// alpha over the open grid of (0,1). Throws HypothesisFailed if h(alpha) >= alpha
/// fails and NegativeFunction if f < 0 somewhere on the grid.
InclusionChainReport verify_inclusion_chain(const FunctionSpec& f, const HKernel& h,
                                            ClassGrid grid = {});

}  // namespace hhb
