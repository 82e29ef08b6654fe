#include <cmath>
#include <limits>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hhb/bounds.hpp"
#include "hhb/error.hpp"
#include "hhb/report.hpp"

namespace {

using nlohmann::json;

TEST(Json, NumberFormatting) {
  EXPECT_EQ(hhb::json_number(0.1), "0.10000000000000001");
  EXPECT_EQ(hhb::json_number(2.0), "2");
  EXPECT_EQ(hhb::json_number(std::numeric_limits<double>::infinity()), "null");
  EXPECT_EQ(hhb::json_number(std::nan("")), "null");
  EXPECT_EQ(hhb::json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
}

TEST(Json, ReportSchemaAndKeyOrder) {
  const hhb::Interval iv(0, 1, 0.5);
  const auto r = hhb::th1_bound(hhb::FunctionSpec::power(2, iv), iv, hhb::HKernel::identity());
  const std::string text = hhb::to_json(r);
  const json j = json::parse(text);

  EXPECT_EQ(j["statement_id"], "th1_eq21");
  EXPECT_EQ(j["inputs"]["f"], "poly:2");
  EXPECT_EQ(j["inputs"]["h"], "id");
  EXPECT_EQ(j["inputs"]["x"], 0.5);
  EXPECT_FALSE(j["inputs"].contains("p"));
  EXPECT_DOUBLE_EQ(j["lhs"].get<double>(), r.lhs);
  EXPECT_DOUBLE_EQ(j["rhs"].get<double>(), r.rhs);
  EXPECT_DOUBLE_EQ(j["gap"].get<double>(), r.gap);
  EXPECT_EQ(j["holds"], true);
  ASSERT_TRUE(j["hypothesis_checks"].is_array());
  EXPECT_EQ(j["hypothesis_checks"].size(), r.hypothesis_checks.size());
  for (const auto& c : j["hypothesis_checks"]) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("passed"));
  }
  EXPECT_TRUE(j.contains("quadrature_error"));

  const char* order[] = {"\"statement_id\"", "\"inputs\"", "\"lhs\"", "\"rhs\"", "\"gap\"",
                         "\"holds\"", "\"hypothesis_checks\"", "\"quadrature_error\""};
  std::size_t last = 0;
  for (const char* key : order) {
    const auto pos = text.find(key);
    ASSERT_NE(pos, std::string::npos) << key;
    EXPECT_GE(pos, last) << key;
    last = pos;
  }
}

TEST(Json, Deterministic) {
  const hhb::Interval iv(0.5, 3, 1.7);
  const auto f = hhb::FunctionSpec::exponent(iv);
  const std::string first = hhb::to_json(hhb::th3_bound(f, iv, hhb::HKernel::power(0.25), 3.0));
  const std::string second = hhb::to_json(hhb::th3_bound(f, iv, hhb::HKernel::power(0.25), 3.0));
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.find('\n'), std::string::npos);
}

TEST(Statements, ParseAndPrint) {
  EXPECT_EQ(hhb::parse_statement("th1"), hhb::StatementId::th1_eq21);
  EXPECT_EQ(hhb::parse_statement("th2"), hhb::StatementId::th2_eq22);
  EXPECT_EQ(hhb::parse_statement("lemma"), hhb::StatementId::lemma110);
  EXPECT_EQ(hhb::parse_statement("rem_th3_ht"), hhb::StatementId::rem_th3_ht);
  EXPECT_EQ(hhb::to_string(hhb::StatementId::p305), "p305");
  EXPECT_THROW(hhb::parse_statement("th9"), hhb::Error);
  for (int i = 0; i <= static_cast<int>(hhb::StatementId::p305); ++i) {
    const auto id = static_cast<hhb::StatementId>(i);
    EXPECT_EQ(hhb::parse_statement(hhb::to_string(id)), id);
  }
}

}  // namespace
