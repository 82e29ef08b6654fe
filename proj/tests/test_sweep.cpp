#include <algorithm>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hhb/error.hpp"
#include "hhb/sweep.hpp"

namespace {

using hhb::RowStatus;
using hhb::StatementId;
using hhb::SweepConfig;

SweepConfig small_config() {
  SweepConfig c;
  c.functions = {"poly:2", "exp"};
  c.kernels = {"id", "one"};
  c.intervals = {{0.0, 1.0}, {1.0, 2.0}};
  c.x_grid = 3;
  c.exponents = {2.0};
  c.statements = {StatementId::th1_eq21, StatementId::th2_eq22, StatementId::th3};
  c.jobs = 2;
  return c;
}

TEST(SweepConfig, DeskScale) {
  const auto c = SweepConfig::desk_scale();
  EXPECT_EQ(c.functions.size(), 4u);
  EXPECT_EQ(c.kernels.size(), 5u);
  EXPECT_EQ(c.intervals.size(), 3u);
  EXPECT_EQ(c.x_grid, 11u);
  EXPECT_EQ(c.exponents, (std::vector<double>{1.5, 2.0, 3.0}));
  EXPECT_NO_THROW(c.validate());
}

TEST(SweepConfig, Validation) {
  auto c = small_config();
  c.kernels.clear();
  EXPECT_THROW(c.validate(), hhb::Error);
  c = small_config();
  c.x_grid = 0;
  EXPECT_THROW(c.validate(), hhb::Error);
  c = small_config();
  c.statements = {StatementId::p301};
  EXPECT_THROW(c.validate(), hhb::Error);
  c = small_config();
  c.tol = 0;
  EXPECT_THROW(c.validate(), hhb::Error);
}

TEST(SweepConfig, ParseFile) {
  std::istringstream in(
      "# small run\n"
      "functions = poly:2 recip\n"
      "kernels = id power:0.5   # trailing comment\n"
      "intervals = 1,2 0.5,3\n"
      "x_grid = 5\n"
      "exponents = 2 3\n"
      "statements = th1 cor7\n"
      "format = json\n"
      "tol = 1e-9\n"
      "jobs = 3\n");
  const auto c = hhb::parse_sweep_config(in);
  EXPECT_EQ(c.functions, (std::vector<std::string>{"poly:2", "recip"}));
  EXPECT_EQ(c.kernels, (std::vector<std::string>{"id", "power:0.5"}));
  ASSERT_EQ(c.intervals.size(), 2u);
  EXPECT_EQ(c.intervals[1], (std::pair{0.5, 3.0}));
  EXPECT_EQ(c.x_grid, 5u);
  EXPECT_EQ(c.statements, (std::vector<StatementId>{StatementId::th1_eq21, StatementId::cor7}));
  EXPECT_EQ(c.out_format, hhb::OutputFormat::json);
  EXPECT_EQ(c.tol, 1e-9);
  EXPECT_EQ(c.jobs, 3u);

  std::istringstream bad("functions poly:2\n");
  EXPECT_THROW(hhb::parse_sweep_config(bad), hhb::Error);
  std::istringstream unknown("colour = red\n");
  EXPECT_THROW(hhb::parse_sweep_config(unknown), hhb::Error);
}

TEST(Sweep, RowsAreDeterministicAndHold) {
  auto c = small_config();
  const auto one = hhb::run_sweep(c);
  c.jobs = 1;
  const auto two = hhb::run_sweep(c);
  // 2 f x 2 h x 2 intervals x 3 x-points x 3 statements
  EXPECT_EQ(one.rows.size(), 72u);
  EXPECT_EQ(hhb::to_csv(one), hhb::to_csv(two));
  EXPECT_EQ(one.summary.failed, 0u);
  EXPECT_EQ(one.summary.held, 72u);
  EXPECT_EQ(one.exit_code(), 0);
  ASSERT_TRUE(one.summary.min_gap.has_value());
  EXPECT_GE(*one.summary.min_gap, -1e-9);
}

TEST(Sweep, GodunovaRowsAreSkipped) {
  auto c = small_config();
  c.kernels = {"godunova", "id"};
  const auto r = hhb::run_sweep(c);
  std::size_t skipped = 0;
  for (const auto& row : r.rows) {
    if (row.h == "godunova") {
      EXPECT_EQ(row.status, RowStatus::skipped);
      EXPECT_EQ(row.reason, "divergent-moments");
      ++skipped;
    } else {
      EXPECT_EQ(row.status, RowStatus::ok);
    }
  }
  EXPECT_EQ(skipped, r.summary.skipped);
  EXPECT_EQ(r.exit_code(), 0);
  const std::string csv = hhb::to_csv(r);
  EXPECT_NE(csv.find("skipped:divergent-moments"), std::string::npos);
}

TEST(Sweep, HypothesisFailureGivesWarningExit) {
  SweepConfig c;
  c.functions = {"poly:2"};
  c.kernels = {"powk:2"};
  c.intervals = {{0.0, 1.0}};
  c.x_grid = 3;
  c.exponents = {2.0};
  c.statements = {StatementId::th2_eq22};
  const auto r = hhb::run_sweep(c);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.report.holds);
    EXPECT_FALSE(row.report.hypotheses_ok());
  }
  EXPECT_EQ(r.summary.hypothesis_failures, 3u);
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Sweep, FailingRowGivesExitOne) {
  SweepConfig c;
  c.functions = {"poly:2"};
  c.kernels = {"powk:2"};
  c.intervals = {{0.0, 1.0}};
  c.x_grid = 11;
  c.exponents = {2.0};
  c.statements = {StatementId::th1_eq21};
  const auto r = hhb::run_sweep(c);
  EXPECT_GT(r.summary.failed, 0u);
  EXPECT_EQ(r.exit_code(), 1);
  ASSERT_TRUE(r.summary.argmin.has_value());
  const auto& worst = r.rows[*r.summary.argmin];
  for (const auto& row : r.rows) EXPECT_GE(row.report.gap, worst.report.gap);
}

TEST(Sweep, ExtraFunctionsAndFlatMidpoint) {
  SweepConfig c;
  c.functions = {"poly:2"};
  c.kernels = {"id"};
  c.intervals = {{0.0, 1.0}};
  c.x_grid = 1;
  c.exponents = {2.0};
  c.statements = {StatementId::rem_fprime0};
  const hhb::SweepFunction centred{"centred", [](const hhb::Interval& iv) {
                                     const double m = iv.midpoint();
                                     return hhb::FunctionSpec::user(
                                         "centred", [m](double u) { return (u - m) * (u - m); }, iv);
                                   }};
  const auto r = hhb::run_sweep(c, {centred});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].status, RowStatus::skipped);
  EXPECT_EQ(r.rows[0].reason, "fprime-mid-nonzero");
  EXPECT_EQ(r.rows[1].f, "centred");
  EXPECT_EQ(r.rows[1].status, RowStatus::ok);
  EXPECT_TRUE(r.rows[1].report.holds);
}

TEST(Sweep, ReciprocalOnUnitIntervalIsDomainSkip) {
  SweepConfig c;
  c.functions = {"recip"};
  c.kernels = {"id"};
  c.intervals = {{0.0, 1.0}, {1.0, 2.0}};
  c.x_grid = 1;
  c.exponents = {2.0};
  c.statements = {StatementId::cor1};
  const auto r = hhb::run_sweep(c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].reason, "domain");
  EXPECT_EQ(r.rows[1].status, RowStatus::ok);
}

TEST(Sweep, OutputFormats) {
  auto c = small_config();
  c.functions = {"poly:2"};
  c.kernels = {"id"};
  c.intervals = {{0.0, 1.0}};
  const auto r = hhb::run_sweep(c);
  const std::string csv = hhb::to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "statement_id,f,h,a,b,x,exponent,lhs,rhs,gap,holds,hyp_ok,quad_err,status");
  EXPECT_NE(csv.find("# total=9 held=9 failed=0"), std::string::npos);

  const auto j = nlohmann::json::parse(hhb::to_json(r));
  EXPECT_EQ(j["rows"].size(), 9u);
  EXPECT_EQ(j["summary"]["total"], 9);
  EXPECT_EQ(j["rows"][0]["report"]["statement_id"], "th1_eq21");
}

}  // namespace
