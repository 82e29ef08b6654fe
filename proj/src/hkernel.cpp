#include "hhb/hkernel.hpp"

#include <algorithm>
#include <charconv>
#include <vector>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include <fmt/format.h>

#include "hhb/error.hpp"

namespace hhb {

struct HKernel::Cache {
  std::mutex mutex;
  std::map<double, MomentSet> by_tol;
};

HKernel::HKernel(KernelKind kind, std::string label, double param)
    : kind_(kind), label_(std::move(label)), param_(param), cache_(std::make_shared<Cache>()) {}

HKernel HKernel::identity() { return HKernel(KernelKind::identity, "id", 1.0); }

HKernel HKernel::power(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::BadExponent, fmt::format("power kernel needs s > 0, got {}", s));
  }
  return HKernel(KernelKind::power, fmt::format("power:{}", s), s);
}

HKernel HKernel::one() { return HKernel(KernelKind::one, "one", 0.0); }

HKernel HKernel::godunova() { return HKernel(KernelKind::godunova, "godunova", -1.0); }

HKernel HKernel::power_general(double k) {
  if (!std::isfinite(k)) {
    throw Error(ErrorKind::BadExponent, fmt::format("powk kernel needs finite k, got {}", k));
  }
  return HKernel(KernelKind::power_general, fmt::format("powk:{}", k), k);
}

HKernel HKernel::user(std::string label, std::function<double(double)> fn) {
  if (!fn) throw Error(ErrorKind::InvalidArgument, "user kernel closure is empty");
  HKernel h(KernelKind::user, std::move(label), 0.0);
  h.closure_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
  return h;
}

double HKernel::operator()(double t) const {
  if (!(t >= -1e-15 && t <= 1.0 + 1e-15)) {
    throw Error(ErrorKind::DomainViolation,
                fmt::format("kernel {} evaluated at t={:.17g} outside [0,1]", label_, t));
  }
  switch (kind_) {
    case KernelKind::identity: return t;
    case KernelKind::power:
    case KernelKind::power_general: return std::pow(t, param_);
    case KernelKind::one: return 1.0;
    case KernelKind::godunova: return 1.0 / t;
    case KernelKind::user: return (*closure_)(t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool HKernel::endpoint_singular() const { return !std::isfinite((*this)(0.0)); }

const MomentSet& HKernel::moments(double tol) const {
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->by_tol.find(tol);
  if (it == cache_->by_tol.end()) {
    it = cache_->by_tol.emplace(tol, hhb::moments(*this, tol)).first;
  }
  return it->second;
}

MomentSet moments(const HKernel& h, double tol) {
  MomentSet m;
  m.m_t = integrate([&](double t) { return h(t); }, 0.0, 1.0, tol);
  m.m_1mt = integrate([&](double t) { return h(1.0 - t); }, 0.0, 1.0, tol);
  m.m_prod = integrate([&](double t) { return h((1.0 - t) * t); }, 0.0, 1.0, tol);
  m.m_sq = integrate([&](double t) { return h((1.0 - t) * (1.0 - t)); }, 0.0, 1.0, tol);
  return m;
}

namespace {

void require_grid(std::size_t grid) {
  if (grid < 2) throw Error(ErrorKind::InvalidArgument, "kernel check grid must be >= 2");
}

}  // namespace

SupermultiplicativeCheck check_supermultiplicative(const HKernel& h, std::size_t grid) {
  require_grid(grid);
  SupermultiplicativeCheck out;
  out.grid = grid;
  const double step = 1.0 / static_cast<double>(grid - 1);
  std::vector<double> values(grid);
  for (std::size_t i = 1; i < grid; ++i) values[i] = h(static_cast<double>(i) * step);

  double worst = kKernelCheckTol;
  for (std::size_t i = 1; i < grid; ++i) {
    const double x = static_cast<double>(i) * step;
    for (std::size_t j = i; j < grid; ++j) {
      const double y = static_cast<double>(j) * step;
      const double product = values[i] * values[j];
      const double shortfall = product - h(x * y);
      if (shortfall > worst * std::max(1.0, std::abs(product))) {
        worst = shortfall / std::max(1.0, std::abs(product));
        out.holds = false;
        out.witness = {x, y};
      }
    }
  }
  return out;
}

DominanceCheck check_dominates_identity(const HKernel& h, std::size_t grid) {
  require_grid(grid);
  DominanceCheck out;
  out.grid = grid;
  const double step = 1.0 / static_cast<double>(grid - 1);
  double worst = kKernelCheckTol;
  for (std::size_t i = 1; i + 1 < grid; ++i) {
    const double alpha = static_cast<double>(i) * step;
    const double shortfall = alpha - h(alpha);
    if (shortfall > worst) {
      worst = shortfall;
      out.holds = false;
      out.witness = alpha;
    }
  }
  return out;
}

HKernel parse_kernel(std::string_view text) {
  if (text.starts_with("h=")) text.remove_prefix(2);
  const auto number = [&](std::string_view digits) {
    double v{};
    const auto* end = digits.data() + digits.size();
    const auto [ptr, ec] = std::from_chars(digits.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("cannot parse kernel '{}'", text));
    }
    return v;
  };
  if (text == "id") return HKernel::identity();
  if (text == "one") return HKernel::one();
  if (text == "godunova") return HKernel::godunova();
  if (text.starts_with("power:")) return HKernel::power(number(text.substr(6)));
  if (text.starts_with("powk:")) return HKernel::power_general(number(text.substr(5)));
  throw Error(ErrorKind::InvalidArgument,
              fmt::format("unknown kernel '{}' (expected id, power:s, one, godunova, powk:k)", text));
}

}  // namespace hhb
