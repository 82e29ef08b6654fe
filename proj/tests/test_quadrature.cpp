#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "hhb/error.hpp"
#include "hhb/quadrature.hpp"

namespace {

using hhb::Error;
using hhb::ErrorKind;
using hhb::integrate;

// Composite midpoint rule, used as an oracle independent of Gauss-Kronrod.
double midpoint_sum(const hhb::RealFn& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(lo + (i + 0.5) * h);
  return sum * h;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no hhb::Error thrown";
  return ErrorKind::InvalidArgument;
}

TEST(Integrate, Polynomials) {
  const auto r = integrate([](double t) { return t; }, 0.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.5, 1e-15);

  const auto sq = integrate([](double t) { return (1 - t) * (1 - t); }, 0.0, 1.0);
  EXPECT_NEAR(sq.value, 1.0 / 3.0, 1e-15);
}

TEST(Integrate, BetaMomentAgainstMidpointSum) {
  auto f = [](double t) { return std::sqrt((1 - t) * t); };
  const auto r = integrate(f, 0.0, 1.0);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.abs_error_estimate, 1e-10);
  // The sqrt endpoint behaviour limits the midpoint sum to about n^-1.5.
  EXPECT_NEAR(r.value, midpoint_sum(f, 0.0, 1.0, 2'000'000), 1e-9);
  EXPECT_NEAR(r.value, std::numbers::pi / 8.0, 1e-10);
}

TEST(Integrate, Linearity) {
  auto f = [](double t) { return std::exp(t); };
  auto g = [](double t) { return std::sin(3 * t); };
  const double alpha = 2.5;
  const double beta = -0.75;
  const double tol = 1e-10;
  const auto lhs = integrate([&](double t) { return alpha * f(t) + beta * g(t); }, 0.2, 1.7, tol);
  const auto rf = integrate(f, 0.2, 1.7, tol);
  const auto rg = integrate(g, 0.2, 1.7, tol);
  EXPECT_NEAR(lhs.value, alpha * rf.value + beta * rg.value, 10 * tol);
}

TEST(Integrate, Reflection) {
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    const auto fwd = integrate([s](double t) { return std::pow(t, s); }, 0.0, 1.0);
    const auto rev = integrate([s](double t) { return std::pow(1 - t, s); }, 0.0, 1.0);
    EXPECT_NEAR(fwd.value, rev.value, 1e-9) << "s=" << s;
  }
}

TEST(Integrate, ExactForLowDegreePolynomials) {
  // A single K15 panel is exact through degree 22; G7 through degree 13.
  const auto r = integrate([](double t) { return std::pow(t, 12) - 3 * t * t + 1; }, -1.0, 2.0);
  const double exact = (std::pow(2.0, 13) + 1.0) / 13.0 - (8.0 + 1.0) + 3.0;
  EXPECT_NEAR(r.value, exact, 1e-12 * std::abs(exact));
  EXPECT_EQ(r.evaluations, 15u);
}

TEST(Integrate, NeverEvaluatesEndpoints) {
  const auto r = integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-8);
  EXPECT_NEAR(r.value, 2.0, 1e-6);
}

TEST(Integrate, DivergenceIsReportedNotCapped) {
  const auto r = integrate([](double t) { return 1.0 / t; }, 0.0, 1.0);
  EXPECT_FALSE(r.converged);
}

TEST(Integrate, EmptyInterval) {
  const auto r = integrate([](double) { return 1.0; }, 1.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.value, 0.0);
}

TEST(Integrate, Errors) {
  EXPECT_EQ(kind_of([] { integrate([](double) { return std::nan(""); }, 0.0, 1.0); }),
            ErrorKind::NonFinite);
  EXPECT_EQ(kind_of([] { integrate([](double t) { return t; }, 1.0, 0.0); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { integrate([](double t) { return t; }, 0.0, 1.0, 0.0); }),
            ErrorKind::InvalidArgument);
}

TEST(MeanValue, Examples) {
  EXPECT_NEAR(hhb::mean_value([](double u) { return u * u; }, 0.0, 1.0), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(hhb::mean_value([](double) { return 4.25; }, -3.0, 7.0), 4.25, 1e-14);
  EXPECT_NEAR(hhb::mean_value([](double u) { return 1.0 / u; }, 1.0, 2.0), std::log(2.0), 1e-12);
}

TEST(MeanValue, DegenerateInterval) {
  EXPECT_EQ(kind_of([] { hhb::mean_value([](double u) { return u; }, 1.0, 1.0); }),
            ErrorKind::DegenerateInterval);
}

TEST(MeanValue, NoConvergenceThrows) {
  EXPECT_EQ(kind_of([] { hhb::mean_value([](double u) { return 1.0 / u; }, 0.0, 1.0); }),
            ErrorKind::NoConvergence);
  const auto r = hhb::integral_mean([](double u) { return 1.0 / u; }, 0.0, 1.0);
  EXPECT_FALSE(r.converged);
}

}  // namespace
