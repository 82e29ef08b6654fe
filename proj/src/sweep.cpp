#include "hhb/sweep.hpp"

#include <atomic>
#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "hhb/error.hpp"
#include "hhb/funcat.hpp"
#include "hhb/hkernel.hpp"

namespace hhb {

namespace {

enum class Exponent { none, p, q };

struct StatementShape {
  bool kernel;       // iterates the kernel list
  bool power_kernel; // needs h(t) = t^s, s taken from the kernel
  bool x_dependent;
  Exponent exponent;
  const char* fixed_kernel;
};

StatementShape shape_of(StatementId id) {
  switch (id) {
    case StatementId::lemma110: return {false, false, true, Exponent::none, ""};
    case StatementId::eq109: return {false, false, false, Exponent::none, ""};
    case StatementId::eq111: return {false, false, true, Exponent::p, ""};
    case StatementId::eq112: return {true, true, true, Exponent::p, ""};
    case StatementId::th1_eq21: return {true, false, true, Exponent::none, ""};
    case StatementId::cor1:
    case StatementId::cor2: return {true, false, false, Exponent::none, ""};
    case StatementId::cor3: return {false, false, false, Exponent::none, "id"};
    case StatementId::th2_eq22: return {true, false, true, Exponent::p, ""};
    case StatementId::cor4: return {false, false, true, Exponent::p, "id"};
    case StatementId::cor5: return {true, true, true, Exponent::p, ""};
    case StatementId::cor6: return {false, false, true, Exponent::p, "one"};
    case StatementId::rem_xa:
    case StatementId::rem_xb:
    case StatementId::rem_xmid:
    case StatementId::rem_fprime0: return {true, false, false, Exponent::p, ""};
    case StatementId::th3: return {true, false, true, Exponent::q, ""};
    case StatementId::cor7: return {true, false, false, Exponent::q, ""};
    case StatementId::rem_th3_ht: return {false, false, false, Exponent::q, "id"};
    case StatementId::cor8: return {false, false, false, Exponent::q, "one"};
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument,
              fmt::format("statement {} cannot be swept; use the prop command", to_string(id)));
}

struct Plan {
  StatementId statement;
  std::size_t function;
  std::size_t interval;
  std::optional<std::size_t> kernel;
  std::optional<double> exponent;
  std::optional<double> x;
};

std::vector<double> x_points(double a, double b, std::size_t n) {
  if (n == 1) return {0.5 * (a + b)};
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  xs.back() = b;
  return xs;
}

BoundReport evaluate(const Plan& plan, const FunctionSpec& f, const Interval& iv,
                     const HKernel* h, const BoundOptions& opts) {
  const Interval at = plan.x ? iv.with_point(*plan.x) : iv;
  const double e = plan.exponent.value_or(0.0);
  switch (plan.statement) {
    case StatementId::lemma110: return lemma_bound(f, at, opts);
    case StatementId::eq109: return eq109_bound(f, at, opts);
    case StatementId::eq111: return eq111_bound(f, at, e, opts);
    case StatementId::eq112: return eq112_bound(f, at, e, h->parameter(), opts);
    case StatementId::th1_eq21: return th1_bound(f, at, *h, opts);
    case StatementId::cor1: return cor1_bound(f, at, *h, opts);
    case StatementId::cor2: return cor2_bound(f, at, *h, opts);
    case StatementId::cor3: return cor3_bound(f, at, opts);
    case StatementId::th2_eq22: return th2_bound(f, at, *h, e, opts);
    case StatementId::cor4: return cor4_bound(f, at, e, opts);
    case StatementId::cor5: return cor5_bound(f, at, e, h->parameter(), opts);
    case StatementId::cor6: return cor6_bound(f, at, e, opts);
    case StatementId::rem_xa: return th2_specialization(f, at, *h, e, Th2Point::x_a, opts);
    case StatementId::rem_xb: return th2_specialization(f, at, *h, e, Th2Point::x_b, opts);
    case StatementId::rem_xmid: return th2_specialization(f, at, *h, e, Th2Point::x_mid, opts);
    case StatementId::rem_fprime0:
      return th2_specialization(f, at, *h, e, Th2Point::mid_fprime_zero, opts);
    case StatementId::th3: return th3_bound(f, at, *h, e, opts);
    case StatementId::cor7: return cor7_bound(f, at, *h, e, opts);
    case StatementId::rem_th3_ht: return rem_th3_ht_bound(f, at, e, opts);
    case StatementId::cor8: return cor8_bound(f, at, e, opts);
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, "statement cannot be swept");
}

std::string skip_reason(const Error& e, StatementId id) {
  switch (e.kind()) {
    case ErrorKind::DivergentKernel: return "divergent-moments";
    case ErrorKind::DomainViolation: return "domain";
    case ErrorKind::HypothesisFailed:
      return id == StatementId::rem_fprime0 ? "fprime-mid-nonzero" : "hypothesis";
    default: return {};
  }
}

std::string opt_number(const std::optional<double>& v) {
  return v ? fmt::format("{:.17g}", *v) : std::string();
}

std::string status_text(const SweepRow& row) {
  switch (row.status) {
    case RowStatus::ok: return "ok";
    case RowStatus::skipped: return "skipped:" + row.reason;
    case RowStatus::error: return "error:" + row.reason;
  }
  return "?";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string describe(const SweepRow& row) {
  return fmt::format("statement={} f={} h={} a={:.17g} b={:.17g} x={} exponent={}",
                     to_string(row.statement), row.f, row.h, row.a, row.b, opt_number(row.x),
                     opt_number(row.exponent));
}

template <typename T>
T parse_scalar(std::string_view text, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("bad value '{}' for {}", text, key));
  }
  return value;
}

std::pair<double, double> parse_interval(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("interval '{}' must be a,b", text));
  }
  return {parse_scalar<double>(text.substr(0, comma), "interval"),
          parse_scalar<double>(text.substr(comma + 1), "interval")};
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void SweepConfig::validate() const {
  if (functions.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs functions");
  if (kernels.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs kernels");
  if (intervals.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs intervals");
  if (statements.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs statements");
  if (x_grid < 1) throw Error(ErrorKind::InvalidArgument, "x_grid must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  bool needs_exponent = false;
  for (const StatementId id : statements) {
    needs_exponent = needs_exponent || shape_of(id).exponent != Exponent::none;
  }
  if (needs_exponent && exponents.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sweep needs exponents for the chosen statements");
  }
  for (const auto& [a, b] : intervals) {
    if (!(a < b)) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("interval [{}, {}] needs a < b", a, b));
    }
  }
}

SweepConfig SweepConfig::desk_scale() {
  SweepConfig c;
  c.functions = {"poly:2", "poly:4", "exp", "recip"};
  c.kernels = {"id", "power:0.25", "power:0.5", "power:0.75", "one"};
  c.intervals = {{0.0, 1.0}, {1.0, 2.0}, {0.5, 3.0}};
  c.x_grid = 11;
  c.exponents = {1.5, 2.0, 3.0};
  c.statements = {StatementId::th1_eq21, StatementId::cor1,     StatementId::cor2,
                  StatementId::th2_eq22, StatementId::rem_xa,   StatementId::rem_xb,
                  StatementId::rem_xmid, StatementId::rem_fprime0, StatementId::cor6,
                  StatementId::th3,      StatementId::cor7,     StatementId::rem_th3_ht,
                  StatementId::cor8};
  return c;
}

SweepConfig parse_sweep_config(std::istream& in, SweepConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("config line {}: expected key = value", lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    std::istringstream values(line.substr(eq + 1));
    std::vector<std::string> items;
    for (std::string item; values >> item;) items.push_back(item);

    if (key == "functions") {
      base.functions = items;
    } else if (key == "kernels") {
      base.kernels = items;
    } else if (key == "intervals") {
      base.intervals.clear();
      for (const auto& item : items) base.intervals.push_back(parse_interval(item));
    } else if (key == "exponents") {
      base.exponents.clear();
      for (const auto& item : items) base.exponents.push_back(parse_scalar<double>(item, key));
    } else if (key == "statements") {
      base.statements.clear();
      for (const auto& item : items) base.statements.push_back(parse_statement(item));
    } else if (items.size() != 1) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("config line {}: {} takes one value", lineno, key));
    } else if (key == "x_grid") {
      base.x_grid = parse_scalar<std::size_t>(items[0], key);
    } else if (key == "tol") {
      base.tol = parse_scalar<double>(items[0], key);
    } else if (key == "jobs") {
      base.jobs = parse_scalar<std::size_t>(items[0], key);
    } else if (key == "format") {
      if (items[0] == "json") base.out_format = OutputFormat::json;
      else if (items[0] == "csv") base.out_format = OutputFormat::csv;
      else throw Error(ErrorKind::InvalidArgument, fmt::format("unknown format '{}'", items[0]));
    } else {
      throw Error(ErrorKind::InvalidArgument, fmt::format("config line {}: unknown key '{}'", lineno, key));
    }
  }
  return base;
}

int SweepResult::exit_code() const {
  if (summary.failed > 0) return 1;
  if (summary.hypothesis_failures > 0) return 2;
  return 0;
}

SweepResult run_sweep(const SweepConfig& config, const std::vector<SweepFunction>& extra,
                      BoundOptions options) {
  config.validate();
  options.tol = config.tol;
  HypothesisCache cache;
  if (!options.cache) options.cache = &cache;

  std::vector<SweepFunction> functions;
  for (const std::string& text : config.functions) {
    parse_function(text, Interval(1.0, 2.0));  // syntax check up front
    functions.push_back({text, [text](const Interval& iv) { return parse_function(text, iv); }});
  }
  functions.insert(functions.end(), extra.begin(), extra.end());

  std::vector<HKernel> kernels;
  for (const std::string& text : config.kernels) kernels.push_back(parse_kernel(text));
  std::map<std::string, std::size_t> fixed_kernels;
  for (const char* name : {"id", "one"}) {
    kernels.push_back(parse_kernel(name));
    fixed_kernels[name] = kernels.size() - 1;
  }

  std::vector<Plan> plans;
  for (const StatementId id : config.statements) {
    const StatementShape shape = shape_of(id);
    for (std::size_t fi = 0; fi < functions.size(); ++fi) {
      for (std::size_t ii = 0; ii < config.intervals.size(); ++ii) {
        const auto [a, b] = config.intervals[ii];
        std::vector<std::optional<std::size_t>> ks;
        if (shape.kernel) {
          for (std::size_t ki = 0; ki < config.kernels.size(); ++ki) {
            if (shape.power_kernel && kernels[ki].kind() != KernelKind::power) continue;
            ks.emplace_back(ki);
          }
        } else if (*shape.fixed_kernel) {
          ks.emplace_back(fixed_kernels.at(shape.fixed_kernel));
        } else {
          ks.emplace_back(std::nullopt);
        }
        std::vector<std::optional<double>> es;
        if (shape.exponent == Exponent::none) es.emplace_back(std::nullopt);
        else es.assign(config.exponents.begin(), config.exponents.end());
        std::vector<std::optional<double>> xs;
        if (shape.x_dependent) {
          for (const double x : x_points(a, b, config.x_grid)) xs.emplace_back(x);
        } else {
          xs.emplace_back(std::nullopt);
        }
        for (const auto& k : ks) {
          for (const auto& e : es) {
            for (const auto& x : xs) plans.push_back({id, fi, ii, k, e, x});
          }
        }
      }
    }
  }

  SweepResult result;
  result.rows.resize(plans.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < plans.size(); i = next++) {
      const Plan& plan = plans[i];
      SweepRow& row = result.rows[i];
      const auto [a, b] = config.intervals[plan.interval];
      row.statement = plan.statement;
      row.f = functions[plan.function].label;
      row.h = plan.kernel ? kernels[*plan.kernel].label() : std::string();
      row.a = a;
      row.b = b;
      row.x = plan.x;
      row.exponent = plan.exponent;
      try {
        const Interval iv(a, b);
        const FunctionSpec f = functions[plan.function].make(iv);
        const HKernel* h = plan.kernel ? &kernels[*plan.kernel] : nullptr;
        row.report = evaluate(plan, f, iv, h, options);
        row.x = row.report.inputs.x;
        row.status = RowStatus::ok;
      } catch (const Error& e) {
        row.reason = skip_reason(e, plan.statement);
        row.status = row.reason.empty() ? RowStatus::error : RowStatus::skipped;
        if (row.reason.empty()) row.reason = std::string(to_string(e.kind()));
      }
    }
  };

  std::size_t jobs = config.jobs ? config.jobs : std::thread::hardware_concurrency();
  jobs = std::max<std::size_t>(1, std::min(jobs, plans.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepSummary& s = result.summary;
  s.total = result.rows.size();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (row.status == RowStatus::skipped) {
      ++s.skipped;
      continue;
    }
    if (row.status == RowStatus::error) {
      ++s.failed;
      continue;
    }
    if (row.report.holds) ++s.held;
    else ++s.failed;
    if (!row.report.hypotheses_ok()) ++s.hypothesis_failures;
    if (!s.min_gap || row.report.gap < *s.min_gap) {
      s.min_gap = row.report.gap;
      s.argmin = i;
    }
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out =
      "statement_id,f,h,a,b,x,exponent,lhs,rhs,gap,holds,hyp_ok,quad_err,status\n";
  for (const SweepRow& row : result.rows) {
    const bool ok = row.status == RowStatus::ok;
    const BoundReport& r = row.report;
    out += fmt::format("{},{},{},{:.17g},{:.17g},{},{},{},{},{},{},{},{},{}\n",
                       to_string(row.statement), csv_field(row.f), csv_field(row.h), row.a, row.b,
                       opt_number(row.x), opt_number(row.exponent),
                       ok ? fmt::format("{:.17g}", r.lhs) : "",
                       ok ? fmt::format("{:.17g}", r.rhs) : "",
                       ok ? fmt::format("{:.17g}", r.gap) : "",
                       ok ? (r.holds ? "true" : "false") : "",
                       ok ? (r.hypotheses_ok() ? "true" : "false") : "",
                       ok ? fmt::format("{:.17g}", r.quadrature_error) : "",
                       csv_field(status_text(row)));
  }
  const SweepSummary& s = result.summary;
  out += fmt::format("# total={} held={} failed={} skipped={} hypothesis_failures={}\n", s.total,
                     s.held, s.failed, s.skipped, s.hypothesis_failures);
  out += fmt::format("# min_gap={}\n", s.min_gap ? fmt::format("{:.17g}", *s.min_gap) : "");
  out += fmt::format("# argmin={}\n", s.argmin ? describe(result.rows[*s.argmin]) : "");
  return out;
}

std::string to_json(const SweepResult& result) {
  std::string out = "{\"rows\":[";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (i) out += ',';
    out += "{\"statement_id\":" + json_string(to_string(row.statement));
    out += ",\"f\":" + json_string(row.f) + ",\"h\":" + json_string(row.h);
    out += ",\"a\":" + json_number(row.a) + ",\"b\":" + json_number(row.b);
    out += ",\"x\":" + (row.x ? json_number(*row.x) : std::string("null"));
    out += ",\"exponent\":" + (row.exponent ? json_number(*row.exponent) : std::string("null"));
    const char* status = row.status == RowStatus::ok        ? "ok"
                         : row.status == RowStatus::skipped ? "skipped"
                                                            : "error";
    out += ",\"status\":" + json_string(status);
    if (!row.reason.empty()) out += ",\"reason\":" + json_string(row.reason);
    if (row.status == RowStatus::ok) out += ",\"report\":" + to_json(row.report);
    out += '}';
  }
  const SweepSummary& s = result.summary;
  out += "],\"summary\":{";
  out += fmt::format("\"total\":{},\"held\":{},\"failed\":{},\"skipped\":{},\"hypothesis_failures\":{}",
                     s.total, s.held, s.failed, s.skipped, s.hypothesis_failures);
  out += ",\"min_gap\":" + (s.min_gap ? json_number(*s.min_gap) : std::string("null"));
  out += ",\"argmin\":" + (s.argmin ? json_string(describe(result.rows[*s.argmin])) : std::string("null"));
  out += "}}";
  return out;
}

}  // namespace hhb
