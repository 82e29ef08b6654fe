#pragma once

#include <optional>
#include <string_view>

#include "hhb/report.hpp"

namespace hhb {

enum class MeanKind { quadratic, arithmetic, geometric, logarithmic, p_logarithmic };

std::string_view to_string(MeanKind kind);

struct MeanValue {
  MeanKind kind;
  double a;
  double b;
  double value;
};

double arithmetic_mean(double a, double b);
double geometric_mean(double a, double b);
double quadratic_mean(double a, double b);
/// (b - a) / (ln b - ln a), or a when a and b agree to 1e-12 relative.
double logarithmic_mean(double a, double b);
/// [(b^(p+1) - a^(p+1)) / ((p+1)(b-a))]^(1/p), p not in {-1, 0}; a on the a == b branch.
double p_logarithmic_mean(double a, double b, double p);

/// Dispatches on kind. Throws DomainViolation for negative inputs (or
/// nonpositive ones for G, L, L_p) and BadExponent for a missing or excluded p.
MeanValue mean(MeanKind kind, double a, double b, std::optional<double> p = std::nullopt);

/// Closed-form special-means inequalities for f(x) = x^n (p301, p303, p305)
/// and f(x) = 1/x (p302, p304) on 0 < a < b.
///
/// n is required for p301/p303/p305 with |n| >= 1 and n != -1 (the
/// p-logarithmic mean is undefined there, so ExcludedExponent is raised);
/// it is ignored for p302/p304. q > 1 is required for p305.
BoundReport prop_bound(StatementId id, double a, double b, std::optional<int> n = std::nullopt,
                       std::optional<double> q = std::nullopt,
                       double certify_tol = kCertifyTol);

}  // namespace hhb
