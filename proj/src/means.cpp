#include "hhb/means.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "hhb/error.hpp"

namespace hhb {

std::string_view to_string(MeanKind kind) {
  switch (kind) {
    case MeanKind::quadratic: return "K";
    case MeanKind::arithmetic: return "A";
    case MeanKind::geometric: return "G";
    case MeanKind::logarithmic: return "L";
    case MeanKind::p_logarithmic: return "L_p";
  }
  return "?";
}

namespace {

void require_nonnegative(double a, double b) {
  if (!(a >= 0.0 && b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainViolation, fmt::format("mean needs a, b >= 0, got {}, {}", a, b));
  }
}

void require_positive(double a, double b) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainViolation, fmt::format("mean needs a, b > 0, got {}, {}", a, b));
  }
}

bool nearly_equal(double a, double b) {
  return std::abs(b - a) < 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double arithmetic_mean(double a, double b) {
  require_nonnegative(a, b);
  return 0.5 * (a + b);
}

double geometric_mean(double a, double b) {
  require_nonnegative(a, b);
  return std::sqrt(a * b);
}

double quadratic_mean(double a, double b) {
  require_nonnegative(a, b);
  return std::sqrt(0.5 * (a * a + b * b));
}

double logarithmic_mean(double a, double b) {
  require_positive(a, b);
  if (a == b || nearly_equal(a, b)) return a;
  return (b - a) / (std::log(b) - std::log(a));
}

double p_logarithmic_mean(double a, double b, double p) {
  require_positive(a, b);
  if (!std::isfinite(p) || p == 0.0 || p == -1.0) {
    throw Error(ErrorKind::BadExponent, fmt::format("L_p needs p not in {{-1, 0}}, got {}", p));
  }
  if (a == b || nearly_equal(a, b)) return a;
  const double ratio = (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / ((p + 1.0) * (b - a));
  return std::pow(ratio, 1.0 / p);
}

MeanValue mean(MeanKind kind, double a, double b, std::optional<double> p) {
  double v = 0.0;
  switch (kind) {
    case MeanKind::quadratic: v = quadratic_mean(a, b); break;
    case MeanKind::arithmetic: v = arithmetic_mean(a, b); break;
    case MeanKind::geometric:
      require_positive(a, b);
      v = geometric_mean(a, b);
      break;
    case MeanKind::logarithmic: v = logarithmic_mean(a, b); break;
    case MeanKind::p_logarithmic:
      if (!p) throw Error(ErrorKind::BadExponent, "L_p needs an exponent p");
      v = p_logarithmic_mean(a, b, *p);
      break;
  }
  return {kind, a, b, v};
}

BoundReport prop_bound(StatementId id, double a, double b, std::optional<int> n,
                       std::optional<double> q, double certify_tol) {
  if (!(0.0 < a && a < b) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainViolation, fmt::format("propositions need 0 < a < b, got {}, {}", a, b));
  }
  const bool power_family =
      id == StatementId::p301 || id == StatementId::p303 || id == StatementId::p305;
  const bool reciprocal_family = id == StatementId::p302 || id == StatementId::p304;
  if (!power_family && !reciprocal_family) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("{} is not a special-means proposition", to_string(id)));
  }

  BoundReport r;
  r.statement_id = id;
  r.inputs.a = a;
  r.inputs.b = b;
  const double len = b - a;
  const double A = arithmetic_mean(a, b);

  if (reciprocal_family) {
    r.inputs.f = "recip";
    r.inputs.h = "id";
    r.lhs = std::abs(arithmetic_mean(1.0 / a, 1.0 / b) - 1.0 / logarithmic_mean(a, b));
    const double K = quadratic_mean(a, b);
    const double G = geometric_mean(a, b);
    const double endpoint_term = 2.0 * K * K / std::pow(G, 4);
    r.rhs = id == StatementId::p302 ? len / 12.0 * (1.0 / (A * A) + endpoint_term)
                                    : len / 8.0 * endpoint_term;
    certify(r, certify_tol);
    return r;
  }

  if (!n) throw Error(ErrorKind::BadExponent, fmt::format("{} needs n", to_string(id)));
  if (*n == -1) {
    throw Error(ErrorKind::ExcludedExponent,
                "n = -1 needs L_{-1}, which the p-logarithmic mean excludes");
  }
  if (*n == 0) throw Error(ErrorKind::BadExponent, "propositions need |n| >= 1");
  const int k = *n;
  const double abs_n = std::abs(static_cast<double>(k));
  r.inputs.f = fmt::format("poly:{}", k);
  r.inputs.h = "id";
  r.inputs.n = k;
  r.lhs = std::abs(arithmetic_mean(std::pow(a, k), std::pow(b, k)) -
                   std::pow(p_logarithmic_mean(a, b, k), k));

  const double an1 = std::pow(a, k - 1);
  const double bn1 = std::pow(b, k - 1);
  switch (id) {
    case StatementId::p301:
      r.rhs = abs_n * len / 12.0 * (std::pow(A, k - 1) + 2.0 * arithmetic_mean(an1, bn1));
      break;
    case StatementId::p303:
      r.rhs = len / 4.0 * abs_n * arithmetic_mean(an1, bn1);
      break;
    default: {
      if (!q) throw Error(ErrorKind::BadExponent, "p305 needs q");
      if (!(*q > 1.0) || !std::isfinite(*q)) {
        throw Error(ErrorKind::BadExponent, fmt::format("p305 needs q > 1, got {}", *q));
      }
      const double qq = *q;
      r.inputs.q = qq;
      r.inputs.p = qq / (qq - 1.0);
      const double e = qq * (k - 1);
      const double half_mid = 0.5 * std::pow(A, e);
      r.rhs = abs_n * len * std::pow(2.0, 1.0 / qq - 3.0) * std::pow(3.0, -1.0 / qq) *
              (std::pow(half_mid + std::pow(a, e), 1.0 / qq) +
               std::pow(half_mid + std::pow(b, e), 1.0 / qq));
      break;
    }
  }
  certify(r, certify_tol);
  return r;
}

}  // namespace hhb
