#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hhb {

enum class StatementId {
  lemma110,
  eq109,
  eq111,
  eq112,
  th1_eq21,
  cor1,
  cor2,
  cor3,
  th2_eq22,
  cor4,
  cor5,
  cor6,
  rem_xa,
  rem_xb,
  rem_xmid,
  rem_fprime0,
  th3,
  cor7,
  rem_th3_ht,
  cor8,
  p301,
  p302,
  p303,
  p304,
  p305,
};

std::string_view to_string(StatementId id);
/// Accepts the canonical names plus the aliases th1, th2, lemma.
StatementId parse_statement(std::string_view text);

inline constexpr double kCertifyTol = 1e-9;

struct HypothesisCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Parameters a report was evaluated at; absent fields are omitted on output.
struct BoundInputs {
  std::string f;
  std::string h;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> x;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> s;
  std::optional<int> n;
};

struct BoundReport {
  StatementId statement_id = StatementId::th1_eq21;
  BoundInputs inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool holds = true;
  /// Set when -certify_tol <= gap < 0: counted as holding, flagged as roundoff.
  bool roundoff = false;
  std::vector<HypothesisCheck> hypothesis_checks;
  double quadrature_error = 0.0;
  /// Alternative right-hand sides kept for comparison (printed forms, chained bounds).
  std::vector<std::pair<std::string, double>> variants;

  bool hypotheses_ok() const noexcept;
};

/// Fills gap, holds and roundoff from lhs and rhs.
void certify(BoundReport& report, double certify_tol = kCertifyTol);

/// Deterministic single-line JSON: fixed key order, 17 significant digits.
std::string to_json(const BoundReport& report);

/// Formats a double with 17 significant digits; non-finite values become null.
std::string json_number(double v);
std::string json_string(std::string_view s);

}  // namespace hhb
