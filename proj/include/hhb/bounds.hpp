#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "hhb/classes.hpp"
#include "hhb/funcat.hpp"
#include "hhb/hkernel.hpp"
#include "hhb/quadrature.hpp"
#include "hhb/report.hpp"

namespace hhb {

/// Which right-hand side a report carries as `rhs`; the other is kept in `variants`.
enum class Cor6Form { derived, printed };
enum class Th3Factor { kernel_moment, tight };
enum class BackgroundForm { reduction, printed };
enum class Th2Point { x_a, x_b, x_mid, mid_fprime_zero };
enum class Background { eq109, eq111, eq112 };

/// Thread-safe memo for hypothesis checks, keyed by a caller-built string.
/// Sweeps share one instance so that a grid check runs once per (f, h, [a,b], q).
class HypothesisCache {
 public:
  HypothesisCheck get_or_compute(const std::string& key,
                                 const std::function<HypothesisCheck()>& compute);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, HypothesisCheck> entries_;
};

struct BoundOptions {
  double tol = kDefaultTol;
  double certify_tol = kCertifyTol;
  ClassGrid grid{};
  std::size_t kernel_grid = kDefaultKernelGrid;
  bool check_hypotheses = true;
  Cor6Form cor6_form = Cor6Form::derived;
  Th3Factor th3_factor = Th3Factor::kernel_moment;
  BackgroundForm background_form = BackgroundForm::reduction;
  HypothesisCache* cache = nullptr;
};

inline constexpr double kFprimeZeroTol = 1e-9;

/// |LHS - RHS| of the integration-by-parts identity behind every bound; needs iv.x.
double lemma_identity_residual(const FunctionSpec& f, const Interval& iv,
                               double tol = kDefaultTol);

/// |((b-x) f(b) + (x-a) f(a)) / (b-a) - mean of f over [a,b]|; needs iv.x.
double lhs_trapezoid_general(const FunctionSpec& f, const Interval& iv,
                             double tol = kDefaultTol);

// Every evaluator below returns a certified report. Hypothesis checks are
// recorded in the report, not enforced; the exceptions are kernel divergence
// (DivergentKernel), bad exponents (BadExponent) and f'((a+b)/2) != 0 for
// Th2Point::mid_fprime_zero (HypothesisFailed).

BoundReport lemma_bound(const FunctionSpec& f, const Interval& iv, const BoundOptions& opts = {});

BoundReport th1_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                      const BoundOptions& opts = {});
BoundReport cor1_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                       const BoundOptions& opts = {});
BoundReport cor2_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                       const BoundOptions& opts = {});
/// cor2 at h(t) = t; `variants` holds the closed form (b-a)/8 (|f'(a)| + |f'(b)|).
BoundReport cor3_bound(const FunctionSpec& f, const Interval& iv, const BoundOptions& opts = {});

/// p > 1, q = p / (p - 1).
BoundReport th2_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h, double p,
                      const BoundOptions& opts = {});
/// th2 at h(t) = t; `variants` holds the eq111 value.
BoundReport cor4_bound(const FunctionSpec& f, const Interval& iv, double p,
                       const BoundOptions& opts = {});
/// th2 at h(t) = t^s; `variants` holds the eq112 value.
BoundReport cor5_bound(const FunctionSpec& f, const Interval& iv, double p, double s,
                       const BoundOptions& opts = {});
BoundReport th2_specialization(const FunctionSpec& f, const Interval& iv, const HKernel& h,
                               double p, Th2Point which, const BoundOptions& opts = {});
/// th2 at h(t) = 1. The printed display is kept as variant "printed".
BoundReport cor6_bound(const FunctionSpec& f, const Interval& iv, double p,
                       const BoundOptions& opts = {});

/// q > 1. The leading factor is (int h(1-t))^(1-1/q); variant "tight" uses (1/2)^(1-1/q).
BoundReport th3_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h, double q,
                      const BoundOptions& opts = {});
BoundReport cor7_bound(const FunctionSpec& f, const Interval& iv, const HKernel& h, double q,
                       const BoundOptions& opts = {});
/// cor7 at h(t) = t in its closed form (1/2)^(1/p) (1/3)^(1/q).
BoundReport rem_th3_ht_bound(const FunctionSpec& f, const Interval& iv, double q,
                             const BoundOptions& opts = {});
/// cor7 at h(t) = 1; variant "chained" is (b-a)/2 (|f'(a)| + |f'(b)|).
BoundReport cor8_bound(const FunctionSpec& f, const Interval& iv, double q,
                       const BoundOptions& opts = {});

BoundReport eq109_bound(const FunctionSpec& f, const Interval& iv, const BoundOptions& opts = {});
BoundReport eq111_bound(const FunctionSpec& f, const Interval& iv, double p,
                        const BoundOptions& opts = {});
BoundReport eq112_bound(const FunctionSpec& f, const Interval& iv, double p, double s,
                        const BoundOptions& opts = {});
/// Dispatch over the three classical bounds; p is required for eq111/eq112, s for eq112.
BoundReport background_bound(const FunctionSpec& f, const Interval& iv, Background which,
                             std::optional<double> p, std::optional<double> s,
                             const BoundOptions& opts = {});

}  // namespace hhb
