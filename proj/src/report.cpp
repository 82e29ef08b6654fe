#include "hhb/report.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "hhb/error.hpp"

namespace hhb {

namespace {

constexpr std::array<std::pair<StatementId, std::string_view>, 25> kNames = {{
    {StatementId::lemma110, "lemma110"},
    {StatementId::eq109, "eq109"},
    {StatementId::eq111, "eq111"},
    {StatementId::eq112, "eq112"},
    {StatementId::th1_eq21, "th1_eq21"},
    {StatementId::cor1, "cor1"},
    {StatementId::cor2, "cor2"},
    {StatementId::cor3, "cor3"},
    {StatementId::th2_eq22, "th2_eq22"},
    {StatementId::cor4, "cor4"},
    {StatementId::cor5, "cor5"},
    {StatementId::cor6, "cor6"},
    {StatementId::rem_xa, "rem_xa"},
    {StatementId::rem_xb, "rem_xb"},
    {StatementId::rem_xmid, "rem_xmid"},
    {StatementId::rem_fprime0, "rem_fprime0"},
    {StatementId::th3, "th3"},
    {StatementId::cor7, "cor7"},
    {StatementId::rem_th3_ht, "rem_th3_ht"},
    {StatementId::cor8, "cor8"},
    {StatementId::p301, "p301"},
    {StatementId::p302, "p302"},
    {StatementId::p303, "p303"},
    {StatementId::p304, "p304"},
    {StatementId::p305, "p305"},
}};

}  // namespace

std::string_view to_string(StatementId id) {
  for (const auto& [key, name] : kNames) {
    if (key == id) return name;
  }
  return "unknown";
}

StatementId parse_statement(std::string_view text) {
  if (text == "th1") return StatementId::th1_eq21;
  if (text == "th2") return StatementId::th2_eq22;
  if (text == "lemma") return StatementId::lemma110;
  for (const auto& [key, name] : kNames) {
    if (name == text) return key;
  }
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown statement '{}'", text));
}

bool BoundReport::hypotheses_ok() const noexcept {
  for (const auto& c : hypothesis_checks) {
    if (!c.passed) return false;
  }
  return true;
}

void certify(BoundReport& report, double certify_tol) {
  report.gap = report.rhs - report.lhs;
  report.holds = report.gap >= -certify_tol;
  report.roundoff = report.holds && report.gap < 0.0;
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.17g}", v);
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(c));
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string to_json(const BoundReport& r) {
  std::string out = "{";
  out += "\"statement_id\":" + json_string(to_string(r.statement_id));

  const BoundInputs& in = r.inputs;
  out += ",\"inputs\":{";
  bool first = true;
  const auto field = [&](std::string_view key, const std::string& value) {
    if (!first) out += ',';
    first = false;
    out += json_string(key) + ':' + value;
  };
  if (!in.f.empty()) field("f", json_string(in.f));
  if (!in.h.empty()) field("h", json_string(in.h));
  field("a", json_number(in.a));
  field("b", json_number(in.b));
  if (in.x) field("x", json_number(*in.x));
  if (in.p) field("p", json_number(*in.p));
  if (in.q) field("q", json_number(*in.q));
  if (in.s) field("s", json_number(*in.s));
  if (in.n) field("n", std::to_string(*in.n));
  out += '}';

  out += ",\"lhs\":" + json_number(r.lhs);
  out += ",\"rhs\":" + json_number(r.rhs);
  out += ",\"gap\":" + json_number(r.gap);
  out += std::string(",\"holds\":") + (r.holds ? "true" : "false");
  out += std::string(",\"roundoff\":") + (r.roundoff ? "true" : "false");

  out += ",\"hypothesis_checks\":[";
  for (std::size_t i = 0; i < r.hypothesis_checks.size(); ++i) {
    const HypothesisCheck& c = r.hypothesis_checks[i];
    if (i) out += ',';
    out += "{\"name\":" + json_string(c.name) + ",\"passed\":" + (c.passed ? "true" : "false");
    if (!c.detail.empty()) out += ",\"detail\":" + json_string(c.detail);
    out += '}';
  }
  out += ']';

  out += ",\"quadrature_error\":" + json_number(r.quadrature_error);

  out += ",\"variants\":{";
  for (std::size_t i = 0; i < r.variants.size(); ++i) {
    if (i) out += ',';
    out += json_string(r.variants[i].first) + ':' + json_number(r.variants[i].second);
  }
  out += "}}";
  return out;
}

}  // namespace hhb
