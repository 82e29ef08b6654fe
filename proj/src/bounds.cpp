#include "hhb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "hhb/error.hpp"

namespace hhb {

HypothesisCheck HypothesisCache::get_or_compute(const std::string& key,
                                                const std::function<HypothesisCheck()>& compute) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  // Computed outside the lock; two workers racing on one key produce equal values.
  HypothesisCheck check = compute();
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, std::move(check)).first->second;
}

std::size_t HypothesisCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

namespace {

void require_inside(const FunctionSpec& f, const Interval& iv) {
  if (!f.domain().contains(iv.a()) || !f.domain().contains(iv.b())) {
    throw Error(ErrorKind::DomainViolation,
                fmt::format("[{:.17g}, {:.17g}] is not inside the domain of {}", iv.a(), iv.b(),
                            f.label()));
  }
}

void require_exponent(double e, std::string_view name) {
  if (!std::isfinite(e) || !(e > 1.0)) {
    throw Error(ErrorKind::BadExponent, fmt::format("{} must be > 1, got {}", name, e));
  }
}

double conjugate(double e) { return e / (e - 1.0); }

double abs_deriv(const FunctionSpec& f, double u) { return std::abs(f.eval_deriv(u)); }

enum MomentNeed : unsigned { kNeedT = 1, kNeed1mt = 2, kNeedProd = 4, kNeedSq = 8 };

constexpr double kMomentTol = 1e-13;

const MomentSet& kernel_moments(const HKernel& h, double tol, unsigned need) {
  if (h.kind() == KernelKind::godunova) {
    throw Error(ErrorKind::DivergentKernel,
                "kernel h(t)=1/t has divergent moment integrals; no bound is evaluated");
  }
  // Moment errors get multiplied by |f'|^q terms, so ask for more than the
  // caller's tolerance when the kernel allows it.
  const MomentSet* tight = &h.moments(std::min(tol, kMomentTol));
  const MomentSet& m = tight->all_converged() ? *tight : h.moments(tol);
  const bool ok = (!(need & kNeedT) || m.m_t.converged) &&
                  (!(need & kNeed1mt) || m.m_1mt.converged) &&
                  (!(need & kNeedProd) || m.m_prod.converged) &&
                  (!(need & kNeedSq) || m.m_sq.converged);
  if (!ok) {
    throw Error(ErrorKind::DivergentKernel,
                fmt::format("moment integrals of kernel {} did not converge", h.label()));
  }
  return m;
}

double moment_error(const MomentSet& m, unsigned need) {
  double e = 0.0;
  if (need & kNeedT) e += m.m_t.abs_error_estimate;
  if (need & kNeed1mt) e += m.m_1mt.abs_error_estimate;
  if (need & kNeedProd) e += m.m_prod.abs_error_estimate;
  if (need & kNeedSq) e += m.m_sq.abs_error_estimate;
  return e;
}

struct Lhs {
  double value;
  double error;
};

Lhs trapezoid_lhs(const FunctionSpec& f, const Interval& iv, double x, double tol) {
  const double a = iv.a();
  const double b = iv.b();
  const QuadratureResult mean = integral_mean([&](double u) { return f.eval(u); }, a, b, tol);
  if (!mean.converged) {
    throw Error(ErrorKind::NoConvergence,
                fmt::format("integral of {} over [{:.17g}, {:.17g}] did not converge", f.label(),
                            a, b));
  }
  const double weighted = ((b - x) * f.eval(b) + (x - a) * f.eval(a)) / (b - a);
  return {std::abs(weighted - mean.value), mean.abs_error_estimate};
}

BoundReport start(StatementId id, const FunctionSpec& f, const Interval& iv,
                  std::string kernel_label = {}) {
  require_inside(f, iv);
  BoundReport r;
  r.statement_id = id;
  r.inputs.f = f.label();
  r.inputs.h = std::move(kernel_label);
  r.inputs.a = iv.a();
  r.inputs.b = iv.b();
  return r;
}

std::string grid_note(const ClassGrid& g) { return fmt::format("{}x{}x{} grid", g.x, g.y, g.t); }

// Class membership of |f'|^power on [a,b], through the cache when one is given.
HypothesisCheck membership_check(std::string name, const FunctionSpec& f, const Interval& iv,
                                 double power, FunctionClass cls, const std::optional<HKernel>& h,
                                 std::optional<double> s, const BoundOptions& opts) {
  const auto compute = [&]() {
    HypothesisCheck check{name, true, {}};
    const FunctionSpec g = FunctionSpec::user(
        fmt::format("|{}'|^{}", f.label(), power),
        [f, power](double u) { return std::pow(std::abs(f.eval_deriv(u)), power); },
        iv.without_point());
    try {
      const MembershipVerdict v = test_membership(g, cls, h, s, opts.grid);
      check.passed = v.holds;
      check.detail = v.holds ? fmt::format("no counterexample on {}", grid_note(opts.grid))
                             : fmt::format("violated at x={:.17g} y={:.17g} t={:.17g}",
                                           v.witness->x, v.witness->y, v.witness->t);
    } catch (const Error& e) {
      check.passed = false;
      check.detail = e.what();
    }
    return check;
  };
  if (!opts.cache) return compute();
  const std::string key = fmt::format(
      "{}|{}|{:.17g}|{:.17g}|{:.17g}|{}|{}|{}|{}", name, f.label(), iv.a(), iv.b(), power,
      to_string(cls), h ? h->label() : "", s ? fmt::format("{:.17g}", *s) : "", grid_note(opts.grid));
  return opts.cache->get_or_compute(key, compute);
}

HypothesisCheck supermultiplicative_check(const HKernel& h, const BoundOptions& opts) {
  const auto compute = [&]() {
    const SupermultiplicativeCheck c = check_supermultiplicative(h, opts.kernel_grid);
    HypothesisCheck check{"h_supermultiplicative", c.holds, {}};
    check.detail = c.holds ? fmt::format("no counterexample on {0}x{0} grid", c.grid)
                           : fmt::format("h(xy) < h(x)h(y) at x={:.17g} y={:.17g}",
                                         c.witness->first, c.witness->second);
    return check;
  };
  if (!opts.cache) return compute();
  return opts.cache->get_or_compute(fmt::format("supermult|{}|{}", h.label(), opts.kernel_grid),
                                    compute);
}

HypothesisCheck dominance_check(const HKernel& h, const BoundOptions& opts) {
  const auto compute = [&]() {
    const DominanceCheck c = check_dominates_identity(h, opts.kernel_grid);
    HypothesisCheck check{"h_dominates_identity", c.holds, {}};
    check.detail = c.holds ? fmt::format("no counterexample on {}-point grid", c.grid)
                           : fmt::format("h(a) < a at a={:.17g}", *c.witness);
    return check;
  };
  if (!opts.cache) return compute();
  return opts.cache->get_or_compute(fmt::format("dominates|{}|{}", h.label(), opts.kernel_grid),
                                    compute);
}

// Hypotheses shared by the th1 and th3 families.
void add_kernel_checks(BoundReport& r, const FunctionSpec& f, const Interval& iv,
                       const HKernel& h, double power, const BoundOptions& opts) {
  if (!opts.check_hypotheses) return;
  const std::string name = power == 1.0 ? "abs_fprime_h_convex" : "abs_fprime_pow_q_h_convex";
  r.hypothesis_checks.push_back(
      membership_check(name, f, iv, power, FunctionClass::h_convex, h, std::nullopt, opts));
  r.hypothesis_checks.push_back(supermultiplicative_check(h, opts));
  r.hypothesis_checks.push_back(dominance_check(h, opts));
}

void add_th2_checks(BoundReport& r, const FunctionSpec& f, const Interval& iv, const HKernel& h,
                    double q, const BoundOptions& opts) {
  if (!opts.check_hypotheses) return;
  r.hypothesis_checks.push_back(membership_check("abs_fprime_pow_q_h_convex", f, iv, q,
                                                 FunctionClass::h_convex, h, std::nullopt, opts));
}

// Right-hand side of the Hölder-type bound for a general x with kernel moments
// (mt, m1mt): (1/(1+p))^(1/p) * sum over both halves.
double th2_rhs(const FunctionSpec& f, const Interval& iv, double x, double p, double mt,
               double m1mt) {
  const double q = conjugate(p);
  const double a = iv.a();
  const double b = iv.b();
  const double len = b - a;
  const double ax = std::pow(abs_deriv(f, x), q);
  const double left = (x - a) * (x - a) / len *
                      std::pow(ax * mt + std::pow(abs_deriv(f, a), q) * m1mt, 1.0 / q);
  const double right = (b - x) * (b - x) / len *
                       std::pow(ax * mt + std::pow(abs_deriv(f, b), q) * m1mt, 1.0 / q);
  return std::pow(1.0 / (1.0 + p), 1.0 / p) * (left + right);
}

// Curly-bracket sum of the power-mean bound at x with moments (mprod, msq).
double th3_sum(const FunctionSpec& f, const Interval& iv, double x, double q, double mprod,
               double msq) {
  const double a = iv.a();
  const double b = iv.b();
  const double len = b - a;
  const double ax = std::pow(abs_deriv(f, x), q);
  const double left = (x - a) * (x - a) / len *
                      std::pow(ax * mprod + std::pow(abs_deriv(f, a), q) * msq, 1.0 / q);
  const double right = (b - x) * (b - x) / len *
                       std::pow(ax * mprod + std::pow(abs_deriv(f, b), q) * msq, 1.0 / q);
  return left + right;
}

}  // namespace

double lhs_trapezoid_general(const FunctionSpec& f, const Interval& iv, double tol) {
  require_inside(f, iv);
  return trapezoid_lhs(f, iv, iv.point(), tol).value;
}

namespace {

struct LemmaSides {
  double left;
  double right;
  double error;
};

LemmaSides lemma_sides(const FunctionSpec& f, const Interval& iv, double tol) {
  require_inside(f, iv);
  const double a = iv.a();
  const double b = iv.b();
  const double x = iv.point();
  const double len = b - a;

  const QuadratureResult mean = integral_mean([&](double u) { return f.eval(u); }, a, b, tol);
  const double left = ((b - x) * f.eval(b) + (x - a) * f.eval(a)) / len - mean.value;

  const auto part = [&](double end, double sign) {
    return integrate(
        [&](double t) { return sign * (1.0 - t) * f.eval_deriv(t * x + (1.0 - t) * end); }, 0.0,
        1.0, tol);
  };
  QuadratureResult first;
  QuadratureResult second;
  if (x > a) first = part(a, -1.0);
  if (x < b) second = part(b, 1.0);
  if (!mean.converged || !first.converged || !second.converged) {
    throw Error(ErrorKind::NoConvergence, "lemma identity integrals did not converge");
  }
  const double right =
      (x - a) * (x - a) / len * first.value + (b - x) * (b - x) / len * second.value;
  const double error = mean.abs_error_estimate +
                       (x - a) * (x - a) / len * first.abs_error_estimate +
                       (b - x) * (b - x) / len * second.abs_error_estimate;
  return {left, right, error};
}

}  // namespace

double lemma_identity_residual(const FunctionSpec& f, const Interval& iv, double tol) {
  const LemmaSides s = lemma_sides(f, iv, tol);
  return std::abs(s.left - s.right);
}

BoundReport lemma_bound(const FunctionSpec& f, const Interval& iv, const BoundOptions& opts) {
  BoundReport r = start(StatementId::lemma110, f, iv);
  r.inputs.x = iv.point();
  const LemmaSides s = lemma_sides(f, iv, opts.tol);
  r.lhs = std::abs(s.left - s.right);
  r.rhs = 10.0 * opts.tol;
  r.quadrature_error = s.error;
  r.variants = {{"left_side", s.left}, {"right_side", s.right}};
  certify(r, opts.certify_tol);
  return r;
}

BoundReport th1_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                      const BoundOptions& opts) {
  BoundReport r = start(StatementId::th1_eq21, f, iv, h.label());
  const double x = iv.point();
  r.inputs.x = x;
  const MomentSet& m = kernel_moments(h, opts.tol, kNeedProd | kNeedSq);
  add_kernel_checks(r, f, iv, h, 1.0, opts);

  const double a = iv.a();
  const double b = iv.b();
  const double len = b - a;
  const double dx = abs_deriv(f, x);
  const double mp = m.m_prod.value;
  const double ms = m.m_sq.value;
  r.rhs = (x - a) * (x - a) / len * (dx * mp + abs_deriv(f, a) * ms) +
          (b - x) * (b - x) / len * (dx * mp + abs_deriv(f, b) * ms);
  const Lhs lhs = trapezoid_lhs(f, iv, x, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error + moment_error(m, kNeedProd | kNeedSq);
  certify(r, opts.certify_tol);
  return r;
}

BoundReport cor1_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                       const BoundOptions& opts) {
  BoundReport r = start(StatementId::cor1, f, iv, h.label());
  const double mid = iv.midpoint();
  r.inputs.x = mid;
  const MomentSet& m = kernel_moments(h, opts.tol, kNeedProd | kNeedSq);
  add_kernel_checks(r, f, iv, h, 1.0, opts);

  r.rhs = iv.length() / 4.0 *
          (2.0 * abs_deriv(f, mid) * m.m_prod.value +
           (abs_deriv(f, iv.a()) + abs_deriv(f, iv.b())) * m.m_sq.value);
  const Lhs lhs = trapezoid_lhs(f, iv, mid, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error + moment_error(m, kNeedProd | kNeedSq);
  certify(r, opts.certify_tol);
  return r;
}

BoundReport cor2_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                       const BoundOptions& opts) {
  BoundReport r = start(StatementId::cor2, f, iv, h.label());
  const double mid = iv.midpoint();
  r.inputs.x = mid;
  const MomentSet& m = kernel_moments(h, opts.tol, kNeedProd | kNeedSq);
  add_kernel_checks(r, f, iv, h, 1.0, opts);

  r.rhs = iv.length() / 4.0 * (abs_deriv(f, iv.a()) + abs_deriv(f, iv.b())) *
          (2.0 * h(0.5) * m.m_prod.value + m.m_sq.value);
  const Lhs lhs = trapezoid_lhs(f, iv, mid, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error + moment_error(m, kNeedProd | kNeedSq);
  certify(r, opts.certify_tol);
  return r;
}

BoundReport cor3_bound(const FunctionSpec& f, const Interval& iv, const BoundOptions& opts) {
  BoundReport r = cor2_bound(f, iv, HKernel::identity(), opts);
  r.statement_id = StatementId::cor3;
  r.variants.emplace_back("closed_form",
                          iv.length() / 8.0 * (abs_deriv(f, iv.a()) + abs_deriv(f, iv.b())));
  return r;
}

BoundReport th2_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h, double p,
                      const BoundOptions& opts) {
  require_exponent(p, "p");
  BoundReport r = start(StatementId::th2_eq22, f, iv, h.label());
  const double x = iv.point();
  const double q = conjugate(p);
  r.inputs.x = x;
  r.inputs.p = p;
  r.inputs.q = q;
  const MomentSet& m = kernel_moments(h, opts.tol, kNeedT | kNeed1mt);
  add_th2_checks(r, f, iv, h, q, opts);

  r.rhs = th2_rhs(f, iv, x, p, m.m_t.value, m.m_1mt.value);
  const Lhs lhs = trapezoid_lhs(f, iv, x, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error + moment_error(m, kNeedT | kNeed1mt);
  certify(r, opts.certify_tol);
  return r;
}

BoundReport cor4_bound(const FunctionSpec& f, const Interval& iv, double p,
                       const BoundOptions& opts) {
  BoundReport r = th2_bound(f, iv, HKernel::identity(), p, opts);
  r.statement_id = StatementId::cor4;
  BoundOptions reduced = opts;
  reduced.check_hypotheses = false;
  reduced.background_form = BackgroundForm::reduction;
  r.variants.emplace_back("eq111", eq111_bound(f, iv, p, reduced).rhs);
  return r;
}

BoundReport cor5_bound(const FunctionSpec& f, const Interval& iv, double p, double s,
                       const BoundOptions& opts) {
  BoundReport r = th2_bound(f, iv, HKernel::power(s), p, opts);
  r.statement_id = StatementId::cor5;
  r.inputs.s = s;
  BoundOptions reduced = opts;
  reduced.check_hypotheses = false;
  reduced.background_form = BackgroundForm::reduction;
  r.variants.emplace_back("eq112", eq112_bound(f, iv, p, s, reduced).rhs);
  return r;
}

BoundReport th2_specialization(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                               double p, Th2Point which, const BoundOptions& opts) {
  require_exponent(p, "p");
  static constexpr StatementId kIds[] = {StatementId::rem_xa, StatementId::rem_xb,
                                         StatementId::rem_xmid, StatementId::rem_fprime0};
  BoundReport r = start(kIds[static_cast<int>(which)], f, iv, h.label());
  const double a = iv.a();
  const double b = iv.b();
  const double len = b - a;
  const double mid = iv.midpoint();
  const double q = conjugate(p);
  r.inputs.p = p;
  r.inputs.q = q;

  const MomentSet& m = kernel_moments(h, opts.tol, kNeedT | kNeed1mt);
  if (which == Th2Point::mid_fprime_zero) {
    const double slope = f.eval_deriv(mid);
    if (std::abs(slope) > kFprimeZeroTol) {
      throw Error(ErrorKind::HypothesisFailed,
                  fmt::format("f'((a+b)/2) = {:.17g} is not zero", slope));
    }
  }
  add_th2_checks(r, f, iv, h, q, opts);

  const double mt = m.m_t.value;
  const double m1mt = m.m_1mt.value;
  const double lead = std::pow(1.0 / (1.0 + p), 1.0 / p);
  const double ga = std::pow(abs_deriv(f, a), q);
  const double gb = std::pow(abs_deriv(f, b), q);
  double x = mid;
  switch (which) {
    case Th2Point::x_a:
      x = a;
      r.rhs = len * lead * std::pow(ga * mt + gb * m1mt, 1.0 / q);
      break;
    case Th2Point::x_b:
      x = b;
      r.rhs = len * lead * std::pow(gb * mt + ga * m1mt, 1.0 / q);
      break;
    case Th2Point::x_mid: {
      const double gm = std::pow(abs_deriv(f, mid), q);
      r.rhs = len / 4.0 * lead *
              (std::pow(gm * mt + ga * m1mt, 1.0 / q) + std::pow(gm * mt + gb * m1mt, 1.0 / q));
      break;
    }
    case Th2Point::mid_fprime_zero:
      r.rhs = len / 4.0 * lead * (abs_deriv(f, a) + abs_deriv(f, b)) * std::pow(mt, 1.0 / q);
      break;
  }
  r.inputs.x = x;
  const Lhs lhs = trapezoid_lhs(f, iv, x, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error + moment_error(m, kNeedT | kNeed1mt);
  certify(r, opts.certify_tol);
  return r;
}

BoundReport cor6_bound(const FunctionSpec& f, const Interval& iv, double p,
                       const BoundOptions& opts) {
  require_exponent(p, "p");
  const HKernel one = HKernel::one();
  BoundReport r = start(StatementId::cor6, f, iv, one.label());
  const double x = iv.point();
  const double q = conjugate(p);
  r.inputs.x = x;
  r.inputs.p = p;
  r.inputs.q = q;
  const MomentSet& m = kernel_moments(one, opts.tol, kNeedT | kNeed1mt);
  if (opts.check_hypotheses) {
    r.hypothesis_checks.push_back(membership_check("abs_fprime_pow_q_p_function", f, iv, q,
                                                   FunctionClass::p_class, std::nullopt,
                                                   std::nullopt, opts));
  }

  const double a = iv.a();
  const double b = iv.b();
  const double derived = th2_rhs(f, iv, x, p, m.m_t.value, m.m_1mt.value);
  const double printed =
      std::pow(1.0 / (1.0 + p), 1.0 / p) * ((x - a) * (x - a) + (b - x) * (b - x)) / (b - a) *
      std::pow(std::pow(abs_deriv(f, x), q) + std::pow(abs_deriv(f, a), q), 1.0 / q);
  if (opts.cor6_form == Cor6Form::derived) {
    r.rhs = derived;
    r.variants.emplace_back("printed", printed);
  } else {
    r.rhs = printed;
    r.variants.emplace_back("derived", derived);
  }
  const Lhs lhs = trapezoid_lhs(f, iv, x, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error + moment_error(m, kNeedT | kNeed1mt);
  certify(r, opts.certify_tol);
  return r;
}

namespace {

constexpr unsigned kTh3Needs = kNeed1mt | kNeedProd | kNeedSq;

// Shared body of th3 / cor7: the power-mean bound evaluated at x.
BoundReport power_mean_bound(StatementId id, const FunctionSpec& f, const Interval& iv,
                             const HKernel& h, double q, double x, const BoundOptions& opts) {
  require_exponent(q, "q");
  BoundReport r = start(id, f, iv, h.label());
  r.inputs.x = x;
  r.inputs.q = q;
  r.inputs.p = conjugate(q);
  const MomentSet& m = kernel_moments(h, opts.tol, kTh3Needs);
  add_kernel_checks(r, f, iv, h, q, opts);

  const double sum = th3_sum(f, iv, x, q, m.m_prod.value, m.m_sq.value);
  const double kernel_factor = std::pow(m.m_1mt.value, 1.0 - 1.0 / q);
  const double tight_factor = std::pow(0.5, 1.0 - 1.0 / q);
  if (opts.th3_factor == Th3Factor::kernel_moment) {
    r.rhs = kernel_factor * sum;
    r.variants.emplace_back("tight", tight_factor * sum);
  } else {
    r.rhs = tight_factor * sum;
    r.variants.emplace_back("kernel_moment", kernel_factor * sum);
  }
  const Lhs lhs = trapezoid_lhs(f, iv, x, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error + moment_error(m, kTh3Needs);
  certify(r, opts.certify_tol);
  return r;
}

}  // namespace

BoundReport th3_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h, double q,
                      const BoundOptions& opts) {
  return power_mean_bound(StatementId::th3, f, iv, h, q, iv.point(), opts);
}

BoundReport cor7_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h, double q,
                       const BoundOptions& opts) {
  return power_mean_bound(StatementId::cor7, f, iv, h, q, iv.midpoint(), opts);
}

BoundReport rem_th3_ht_bound(const FunctionSpec& f, const Interval& iv, double q,
                             const BoundOptions& opts) {
  require_exponent(q, "q");
  BoundReport r = start(StatementId::rem_th3_ht, f, iv, "id");
  const double mid = iv.midpoint();
  const double p = conjugate(q);
  r.inputs.x = mid;
  r.inputs.q = q;
  r.inputs.p = p;
  if (opts.check_hypotheses) {
    r.hypothesis_checks.push_back(membership_check("abs_fprime_pow_q_convex", f, iv, q,
                                                   FunctionClass::convex, std::nullopt,
                                                   std::nullopt, opts));
  }
  const double gm = std::pow(abs_deriv(f, mid), q);
  const double ga = std::pow(abs_deriv(f, iv.a()), q);
  const double gb = std::pow(abs_deriv(f, iv.b()), q);
  r.rhs = iv.length() / 4.0 * std::pow(0.5, 1.0 / p) * std::pow(1.0 / 3.0, 1.0 / q) *
          (std::pow(0.5 * gm + ga, 1.0 / q) + std::pow(0.5 * gm + gb, 1.0 / q));
  const Lhs lhs = trapezoid_lhs(f, iv, mid, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error;
  certify(r, opts.certify_tol);
  return r;
}

BoundReport cor8_bound(const FunctionSpec& f, const Interval& iv, double q,
                       const BoundOptions& opts) {
  require_exponent(q, "q");
  BoundReport r = start(StatementId::cor8, f, iv, "one");
  const double mid = iv.midpoint();
  r.inputs.x = mid;
  r.inputs.q = q;
  r.inputs.p = conjugate(q);
  if (opts.check_hypotheses) {
    r.hypothesis_checks.push_back(membership_check("abs_fprime_pow_q_p_function", f, iv, q,
                                                   FunctionClass::p_class, std::nullopt,
                                                   std::nullopt, opts));
  }
  const double da = abs_deriv(f, iv.a());
  const double db = abs_deriv(f, iv.b());
  const double gm = std::pow(abs_deriv(f, mid), q);
  r.rhs = iv.length() / 4.0 *
          (std::pow(gm + std::pow(da, q), 1.0 / q) + std::pow(gm + std::pow(db, q), 1.0 / q));
  r.variants.emplace_back("chained", iv.length() / 2.0 * (da + db));
  const Lhs lhs = trapezoid_lhs(f, iv, mid, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error;
  certify(r, opts.certify_tol);
  return r;
}

BoundReport eq109_bound(const FunctionSpec& f, const Interval& iv, const BoundOptions& opts) {
  BoundReport r = start(StatementId::eq109, f, iv);
  const double mid = iv.midpoint();
  r.inputs.x = mid;
  if (opts.check_hypotheses) {
    r.hypothesis_checks.push_back(membership_check("abs_fprime_convex", f, iv, 1.0,
                                                   FunctionClass::convex, std::nullopt,
                                                   std::nullopt, opts));
  }
  r.rhs = iv.length() * (abs_deriv(f, iv.a()) + abs_deriv(f, iv.b())) / 8.0;
  const Lhs lhs = trapezoid_lhs(f, iv, mid, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error;
  certify(r, opts.certify_tol);
  return r;
}

BoundReport eq111_bound(const FunctionSpec& f, const Interval& iv, double p,
                        const BoundOptions& opts) {
  require_exponent(p, "p");
  BoundReport r = start(StatementId::eq111, f, iv);
  const double x = iv.point();
  const double q = conjugate(p);
  r.inputs.x = x;
  r.inputs.p = p;
  r.inputs.q = q;
  if (opts.check_hypotheses) {
    r.hypothesis_checks.push_back(membership_check("abs_fprime_pow_q_convex", f, iv, q,
                                                   FunctionClass::convex, std::nullopt,
                                                   std::nullopt, opts));
  }
  const double a = iv.a();
  const double b = iv.b();
  const double gx = std::pow(abs_deriv(f, x), q);
  const double bracket = ((x - a) * (x - a) * std::pow(std::pow(abs_deriv(f, a), q) + gx, 1.0 / q) +
                          (b - x) * (b - x) * std::pow(gx + std::pow(abs_deriv(f, b), q), 1.0 / q)) /
                         (b - a);
  const double lead = std::pow(1.0 / (1.0 + p), 1.0 / p);
  const double reduction = lead * std::pow(0.5, 1.0 / q) * bracket;
  const double printed = lead * std::pow(0.5, 1.0 / p) * bracket;
  if (opts.background_form == BackgroundForm::reduction) {
    r.rhs = reduction;
    r.variants.emplace_back("printed", printed);
  } else {
    r.rhs = printed;
    r.variants.emplace_back("reduction", reduction);
  }
  const Lhs lhs = trapezoid_lhs(f, iv, x, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error;
  certify(r, opts.certify_tol);
  return r;
}

BoundReport eq112_bound(const FunctionSpec& f, const Interval& iv, double p, double s,
                        const BoundOptions& opts) {
  require_exponent(p, "p");
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorKind::BadExponent, fmt::format("s must lie in (0,1], got {}", s));
  }
  BoundReport r = start(StatementId::eq112, f, iv);
  const double x = iv.point();
  const double q = conjugate(p);
  r.inputs.x = x;
  r.inputs.p = p;
  r.inputs.q = q;
  r.inputs.s = s;
  if (opts.check_hypotheses) {
    r.hypothesis_checks.push_back(membership_check("abs_fprime_pow_q_s_convex", f, iv, q,
                                                   FunctionClass::s_convex, std::nullopt, s,
                                                   opts));
  }
  const double a = iv.a();
  const double b = iv.b();
  const double len = b - a;
  const double da = abs_deriv(f, a);
  const double db = abs_deriv(f, b);
  const double gx = std::pow(abs_deriv(f, x), q);
  const double lead = std::pow(1.0 / (1.0 + p), 1.0 / p) * std::pow(1.0 / (s + 1.0), 1.0 / q);
  const double reduction =
      lead * ((x - a) * (x - a) / len * std::pow(gx + std::pow(da, q), 1.0 / q) +
              (b - x) * (b - x) / len * std::pow(gx + std::pow(db, q), 1.0 / q));
  // As typeset, the 1/q power sits on |f'(a)|^q and |f'(b)|^q alone.
  const double printed = lead * ((x - a) * (x - a) / len * (gx + da) +
                                 (b - x) * (b - x) / len * (gx + db));
  if (opts.background_form == BackgroundForm::reduction) {
    r.rhs = reduction;
    r.variants.emplace_back("printed", printed);
  } else {
    r.rhs = printed;
    r.variants.emplace_back("reduction", reduction);
  }
  const Lhs lhs = trapezoid_lhs(f, iv, x, opts.tol);
  r.lhs = lhs.value;
  r.quadrature_error = lhs.error;
  certify(r, opts.certify_tol);
  return r;
}

BoundReport background_bound(const FunctionSpec& f, const Interval& iv, Background which,
                             std::optional<double> p, std::optional<double> s,
                             const BoundOptions& opts) {
  switch (which) {
    case Background::eq109: return eq109_bound(f, iv, opts);
    case Background::eq111:
      if (!p) throw Error(ErrorKind::BadExponent, "eq111 needs p");
      return eq111_bound(f, iv, *p, opts);
    case Background::eq112:
      if (!p) throw Error(ErrorKind::BadExponent, "eq112 needs p");
      if (!s) throw Error(ErrorKind::BadExponent, "eq112 needs s");
      return eq112_bound(f, iv, *p, *s, opts);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown background bound");
}

}  // namespace hhb
