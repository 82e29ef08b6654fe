#include "hhb/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hhb/bounds.hpp"
#include "hhb/classes.hpp"
#include "hhb/error.hpp"
#include "hhb/funcat.hpp"
#include "hhb/hkernel.hpp"
#include "hhb/means.hpp"
#include "hhb/sweep.hpp"

namespace hhb {

namespace {

struct GlobalFlags {
  std::optional<double> tol;
  std::size_t jobs = 0;
  std::string format = "json";
};

struct VerifyArgs {
  std::string statement;
  std::optional<std::string> f;
  std::optional<std::string> h;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> x;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> s;
  std::optional<int> n;
  bool printed = false;
  bool tight = false;
};

struct ClassifyArgs {
  std::string f;
  std::string cls;
  std::optional<std::string> h;
  std::optional<double> s;
  double a = 0.0;
  double b = 1.0;
  std::size_t grid = 41;
};

struct SweepArgs {
  std::optional<std::string> config;
  std::vector<std::string> functions;
  std::vector<std::string> kernels;
  std::vector<std::string> intervals;
  std::optional<std::size_t> x_grid;
  std::vector<double> exponents;
  std::vector<std::string> statements;
};

// Argument-level failures map to the usage exit code; the rest mean the
// inputs were valid but no bound could be certified.
bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DegenerateInterval:
    case ErrorKind::DomainViolation:
    case ErrorKind::ClassRequiresKernel:
    case ErrorKind::ClassRequiresS:
    case ErrorKind::BadExponent:
    case ErrorKind::ExcludedExponent: return true;
    default: return false;
  }
}

double resolve_tol(const GlobalFlags& g) {
  if (g.tol) return *g.tol;
  if (const char* env = std::getenv("HHB_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("HHB_TOL='{}' is not a positive number", env));
    }
    return v;
  }
  return kDefaultTol;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* flag, StatementId id) {
  if (!v) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("statement {} requires {}", to_string(id), flag));
  }
  return *v;
}

int report_exit(const BoundReport& r) {
  if (!r.holds) return kExitFails;
  if (!r.hypotheses_ok()) return kExitHypothesisWarning;
  return kExitHolds;
}

std::string report_csv(const BoundReport& r) {
  const auto num = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.17g}", *v) : std::string();
  };
  const std::optional<double> exponent = r.inputs.p ? r.inputs.p : r.inputs.q;
  return fmt::format(
      "statement_id,f,h,a,b,x,exponent,lhs,rhs,gap,holds,hyp_ok,quad_err,status\n"
      "{},{},{},{:.17g},{:.17g},{},{},{:.17g},{:.17g},{:.17g},{},{},{:.17g},ok\n",
      to_string(r.statement_id), r.inputs.f, r.inputs.h, r.inputs.a, r.inputs.b, num(r.inputs.x),
      num(exponent), r.lhs, r.rhs, r.gap, r.holds ? "true" : "false",
      r.hypotheses_ok() ? "true" : "false", r.quadrature_error);
}

BoundReport evaluate_statement(const VerifyArgs& v, const BoundOptions& opts) {
  const StatementId id = parse_statement(v.statement);
  switch (id) {
    case StatementId::p301:
    case StatementId::p302:
    case StatementId::p303:
    case StatementId::p304:
    case StatementId::p305:
      return prop_bound(id, need(v.a, "--a", id), need(v.b, "--b", id), v.n, v.q,
                        opts.certify_tol);
    default: break;
  }

  const double a = need(v.a, "--a", id);
  const double b = need(v.b, "--b", id);
  const FunctionSpec f = parse_function(need(v.f, "--f", id), Interval(a, b));
  const Interval iv(a, b, v.x);
  const auto kernel = [&]() { return parse_kernel(need(v.h, "--h", id)); };
  const auto at_x = [&]() {
    need(v.x, "--x", id);
    return iv;
  };

  switch (id) {
    case StatementId::lemma110: return lemma_bound(f, at_x(), opts);
    case StatementId::eq109: return eq109_bound(f, iv, opts);
    case StatementId::eq111: return eq111_bound(f, at_x(), need(v.p, "--p", id), opts);
    case StatementId::eq112:
      return eq112_bound(f, at_x(), need(v.p, "--p", id), need(v.s, "--s", id), opts);
    case StatementId::th1_eq21: return th1_bound(f, at_x(), kernel(), opts);
    case StatementId::cor1: return cor1_bound(f, iv, kernel(), opts);
    case StatementId::cor2: return cor2_bound(f, iv, kernel(), opts);
    case StatementId::cor3: return cor3_bound(f, iv, opts);
    case StatementId::th2_eq22: return th2_bound(f, at_x(), kernel(), need(v.p, "--p", id), opts);
    case StatementId::cor4: return cor4_bound(f, at_x(), need(v.p, "--p", id), opts);
    case StatementId::cor5:
      return cor5_bound(f, at_x(), need(v.p, "--p", id), need(v.s, "--s", id), opts);
    case StatementId::cor6: return cor6_bound(f, at_x(), need(v.p, "--p", id), opts);
    case StatementId::rem_xa:
      return th2_specialization(f, iv, kernel(), need(v.p, "--p", id), Th2Point::x_a, opts);
    case StatementId::rem_xb:
      return th2_specialization(f, iv, kernel(), need(v.p, "--p", id), Th2Point::x_b, opts);
    case StatementId::rem_xmid:
      return th2_specialization(f, iv, kernel(), need(v.p, "--p", id), Th2Point::x_mid, opts);
    case StatementId::rem_fprime0:
      return th2_specialization(f, iv, kernel(), need(v.p, "--p", id), Th2Point::mid_fprime_zero,
                                opts);
    case StatementId::th3: return th3_bound(f, at_x(), kernel(), need(v.q, "--q", id), opts);
    case StatementId::cor7: return cor7_bound(f, iv, kernel(), need(v.q, "--q", id), opts);
    case StatementId::rem_th3_ht: return rem_th3_ht_bound(f, iv, need(v.q, "--q", id), opts);
    case StatementId::cor8: return cor8_bound(f, iv, need(v.q, "--q", id), opts);
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, "unsupported statement");
}

std::string not_evaluated_json(std::string_view statement, const Error& e) {
  const std::string reason = e.kind() == ErrorKind::DivergentKernel ? "divergent-moments"
                                                                     : std::string(to_string(e.kind()));
  return "{\"statement_id\":" + json_string(statement) + ",\"status\":\"skipped\",\"reason\":" +
         json_string(reason) + ",\"detail\":" + json_string(e.what()) + "}";
}

std::string witness_json(const std::optional<Witness>& w) {
  if (!w) return "null";
  return "{\"x\":" + json_number(w->x) + ",\"y\":" + json_number(w->y) + ",\"t\":" +
         json_number(w->t) + "}";
}

std::string quadrature_json(const QuadratureResult& r) {
  return "{\"value\":" + json_number(r.value) + ",\"abs_error_estimate\":" +
         json_number(r.abs_error_estimate) + ",\"converged\":" + (r.converged ? "true" : "false") +
         ",\"evaluations\":" + std::to_string(r.evaluations) + "}";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermite-Hadamard bound verification for h-convex functions", "hhb"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  app.add_option("--tol", global.tol, "quadrature tolerance (overrides HHB_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", global.jobs, "worker threads for sweeps (0 = all cores)");
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "evaluate one statement and certify it");
  verify_cmd->add_option("--statement", verify.statement, "statement id, e.g. th1, cor7, p302")
      ->required();
  verify_cmd->add_option("--f", verify.f, "function: poly:n, recip, exp, affine:c0,c1");
  verify_cmd->add_option("--h", verify.h, "kernel: id, power:s, one, godunova, powk:k");
  verify_cmd->add_option("--a", verify.a);
  verify_cmd->add_option("--b", verify.b);
  verify_cmd->add_option("--x", verify.x);
  verify_cmd->add_option("--p", verify.p);
  verify_cmd->add_option("--q", verify.q);
  verify_cmd->add_option("--s", verify.s);
  verify_cmd->add_option("--n", verify.n);
  verify_cmd->add_flag("--printed", verify.printed, "use the printed display as rhs (cor6, eq111, eq112)");
  verify_cmd->add_flag("--tight", verify.tight, "use the (1/2)^(1-1/q) leading factor (th3, cor7)");

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "grid test of a function-class membership");
  classify_cmd->add_option("--f", classify.f)->required();
  classify_cmd->add_option("--class", classify.cls,
                           "convex, godunova_levin, p_class, s_convex, h_convex, h_concave")
      ->required();
  classify_cmd->add_option("--h", classify.h);
  classify_cmd->add_option("--s", classify.s);
  classify_cmd->add_option("--a", classify.a)->required();
  classify_cmd->add_option("--b", classify.b)->required();
  classify_cmd->add_option("--grid", classify.grid, "points per axis")->check(CLI::Range(2, 1000));

  double means_a = 0.0;
  double means_b = 0.0;
  std::optional<double> means_p;
  auto* means_cmd = app.add_subcommand("means", "special means of two positive numbers");
  means_cmd->add_option("--a", means_a)->required();
  means_cmd->add_option("--b", means_b)->required();
  means_cmd->add_option("--p", means_p, "exponent of the p-logarithmic mean");

  VerifyArgs prop;
  auto* prop_cmd = app.add_subcommand("prop", "special-means propositions p301..p305");
  prop_cmd->add_option("--id", prop.statement)->required();
  prop_cmd->add_option("--a", prop.a)->required();
  prop_cmd->add_option("--b", prop.b)->required();
  prop_cmd->add_option("--n", prop.n);
  prop_cmd->add_option("--q", prop.q);

  std::string moments_kernel;
  auto* moments_cmd = app.add_subcommand("moments", "the four kernel moment integrals");
  moments_cmd->add_option("--h", moments_kernel)->required();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a grid of statements");
  sweep_cmd->add_option("--config", sweep.config, "key=value config file")->check(CLI::ExistingFile);
  sweep_cmd->add_option("--f", sweep.functions)->take_all();
  sweep_cmd->add_option("--h", sweep.kernels)->take_all();
  sweep_cmd->add_option("--interval", sweep.intervals, "a,b")->take_all();
  sweep_cmd->add_option("--x-grid", sweep.x_grid);
  sweep_cmd->add_option("--exp", sweep.exponents)->take_all();
  sweep_cmd->add_option("--statement", sweep.statements)->take_all();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    BoundOptions opts;
    opts.tol = resolve_tol(global);
    const bool csv = global.format == "csv";

    if (*verify_cmd || *prop_cmd) {
      VerifyArgs& v = *verify_cmd ? verify : prop;
      opts.cor6_form = v.printed ? Cor6Form::printed : Cor6Form::derived;
      opts.background_form = v.printed ? BackgroundForm::printed : BackgroundForm::reduction;
      opts.th3_factor = v.tight ? Th3Factor::tight : Th3Factor::kernel_moment;
      if (*prop_cmd) {
        const StatementId id = parse_statement(v.statement);
        if (id < StatementId::p301) {
          throw Error(ErrorKind::InvalidArgument, "prop --id must be one of p301..p305");
        }
      }
      try {
        const BoundReport r = evaluate_statement(v, opts);
        out << (csv ? report_csv(r) : to_json(r) + "\n");
        return report_exit(r);
      } catch (const Error& e) {
        if (is_usage_error(e.kind())) throw;
        out << not_evaluated_json(to_string(parse_statement(v.statement)), e) << "\n";
        return kExitNotEvaluated;
      }
    }

    if (*classify_cmd) {
      const FunctionSpec f = parse_function(classify.f, Interval(classify.a, classify.b));
      const FunctionClass cls = parse_function_class(classify.cls);
      std::optional<HKernel> h;
      if (classify.h) h = parse_kernel(*classify.h);
      const ClassGrid grid{classify.grid, classify.grid, classify.grid};
      std::string json = "{\"class\":" + json_string(to_string(cls)) + ",\"f\":" +
                         json_string(f.label()) + ",\"h\":" +
                         (h ? json_string(h->label()) : std::string("null")) + ",\"a\":" +
                         json_number(classify.a) + ",\"b\":" + json_number(classify.b);
      try {
        const MembershipVerdict v = test_membership(f, cls, h, classify.s, grid);
        json += std::string(",\"holds\":") + (v.holds ? "true" : "false") + ",\"witness\":" +
                witness_json(v.witness) + ",\"min_slack\":" + json_number(v.min_slack) +
                fmt::format(",\"resolution\":[{},{},{}]}}", grid.x, grid.y, grid.t);
        out << json << "\n";
        return v.holds ? kExitHolds : kExitFails;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NegativeFunction) throw;
        out << json << ",\"holds\":false,\"reason\":" << json_string(e.what()) << "}\n";
        return kExitFails;
      }
    }

    if (*means_cmd) {
      std::string json = "{\"a\":" + json_number(means_a) + ",\"b\":" + json_number(means_b);
      for (const MeanKind k : {MeanKind::arithmetic, MeanKind::geometric, MeanKind::quadratic,
                               MeanKind::logarithmic}) {
        json += ",\"" + std::string(to_string(k)) + "\":" + json_number(mean(k, means_a, means_b).value);
      }
      if (means_p) {
        json += ",\"p\":" + json_number(*means_p) + ",\"L_p\":" +
                json_number(mean(MeanKind::p_logarithmic, means_a, means_b, means_p).value);
      }
      out << json << "}\n";
      return kExitHolds;
    }

    if (*moments_cmd) {
      const HKernel h = parse_kernel(moments_kernel);
      const MomentSet m = moments(h, opts.tol);
      out << "{\"h\":" << json_string(h.label()) << ",\"m_t\":" << quadrature_json(m.m_t)
          << ",\"m_1mt\":" << quadrature_json(m.m_1mt) << ",\"m_prod\":" << quadrature_json(m.m_prod)
          << ",\"m_sq\":" << quadrature_json(m.m_sq)
          << ",\"divergent\":" << (m.all_converged() ? "false" : "true") << "}\n";
      return m.all_converged() ? kExitHolds : kExitNotEvaluated;
    }

    if (*sweep_cmd) {
      SweepConfig config = SweepConfig::desk_scale();
      if (sweep.config) {
        std::ifstream in(*sweep.config);
        config = parse_sweep_config(in, config);
      }
      if (!sweep.functions.empty()) config.functions = sweep.functions;
      if (!sweep.kernels.empty()) config.kernels = sweep.kernels;
      if (!sweep.intervals.empty()) {
        std::istringstream joined("intervals = " + fmt::format("{}", fmt::join(sweep.intervals, " ")));
        config = parse_sweep_config(joined, config);
      }
      if (sweep.x_grid) config.x_grid = *sweep.x_grid;
      if (!sweep.exponents.empty()) config.exponents = sweep.exponents;
      if (!sweep.statements.empty()) {
        config.statements.clear();
        for (const auto& s : sweep.statements) config.statements.push_back(parse_statement(s));
      }
      if (global.tol || std::getenv("HHB_TOL")) config.tol = opts.tol;
      if (app.get_option("--jobs")->count()) config.jobs = global.jobs;
      if (app.get_option("--format")->count()) {
        config.out_format = csv ? OutputFormat::csv : OutputFormat::json;
      }
      const SweepResult result = run_sweep(config, {}, opts);
      out << (config.out_format == OutputFormat::csv ? to_csv(result) : to_json(result) + "\n");
      return result.exit_code();
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_usage_error(e.kind()) ? kExitUsage : kExitNotEvaluated;
  }
  return kExitUsage;
}

}  // namespace hhb
