#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhb/bounds.hpp"
#include "hhb/report.hpp"

namespace hhb {

enum class OutputFormat { json, csv };

struct SweepConfig {
  std::vector<std::string> functions;
  std::vector<std::string> kernels;
  std::vector<std::pair<double, double>> intervals;
  std::size_t x_grid = 11;
  std::vector<double> exponents;
  std::vector<StatementId> statements;
  OutputFormat out_format = OutputFormat::csv;
  double tol = kDefaultTol;
  /// Worker threads; 0 means hardware concurrency.
  std::size_t jobs = 0;

  /// Throws InvalidArgument when a list is empty, x_grid < 1, tol <= 0, or a
  /// statement cannot be swept (the special-means propositions).
  void validate() const;

  /// 4 functions x 5 kernels x 3 intervals x 11 x-points x q in {1.5, 2, 3}
  /// over every th1/th2/th3 statement and specialization.
  static SweepConfig desk_scale();
};

/// Reads `key = value` lines; list values are whitespace separated and
/// intervals are written `a,b`. Keys: functions, kernels, intervals, x_grid,
/// exponents, statements, format, tol, jobs. `#` starts a comment.
SweepConfig parse_sweep_config(std::istream& in, SweepConfig base = SweepConfig::desk_scale());

/// A function family that is instantiated per interval, for closures that
/// have no textual syntax.
struct SweepFunction {
  std::string label;
  std::function<FunctionSpec(const Interval&)> make;
};

enum class RowStatus { ok, skipped, error };

struct SweepRow {
  StatementId statement = StatementId::th1_eq21;
  std::string f;
  std::string h;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> x;
  std::optional<double> exponent;
  RowStatus status = RowStatus::ok;
  std::string reason;
  BoundReport report;
};

struct SweepSummary {
  std::size_t total = 0;
  std::size_t held = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t hypothesis_failures = 0;
  std::optional<double> min_gap;
  std::optional<std::size_t> argmin;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;

  /// 1 if any row fails, else 2 if any evaluated row has a failed hypothesis, else 0.
  int exit_code() const;
};

/// Evaluates every (statement, f, h, [a,b], exponent, x) tuple. Rows come back
/// in input order regardless of which worker finished first. Kernel
/// divergence, domain violations and unmet gating hypotheses mark a row
/// skipped instead of aborting the sweep.
SweepResult run_sweep(const SweepConfig& config, const std::vector<SweepFunction>& extra = {},
                      BoundOptions options = {});

/// Fixed columns: statement_id,f,h,a,b,x,exponent,lhs,rhs,gap,holds,hyp_ok,quad_err,status
/// followed by `#` summary lines.
std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);

}  // namespace hhb
