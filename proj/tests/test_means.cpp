#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "hhb/bounds.hpp"
#include "hhb/error.hpp"
#include "hhb/means.hpp"

namespace {

using hhb::ErrorKind;
using hhb::MeanKind;
using hhb::StatementId;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const hhb::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no hhb::Error thrown";
  return ErrorKind::InvalidArgument;
}

TEST(Means, Examples) {
  EXPECT_EQ(hhb::arithmetic_mean(2, 8), 5.0);
  EXPECT_EQ(hhb::geometric_mean(2, 8), 4.0);
  EXPECT_EQ(hhb::quadratic_mean(3, 3), 3.0);
  EXPECT_EQ(hhb::logarithmic_mean(2.5, 2.5), 2.5);
  EXPECT_EQ(hhb::p_logarithmic_mean(2.5, 2.5, 3.0), 2.5);
  EXPECT_NEAR(hhb::p_logarithmic_mean(1, 2, 2), std::sqrt(7.0 / 3.0), 1e-15);
  EXPECT_NEAR(hhb::p_logarithmic_mean(1, 2, 2), 1.5275252, 1e-7);
  EXPECT_NEAR(hhb::logarithmic_mean(1, 2), 1.0 / std::log(2.0), 1e-15);
}

TEST(Means, NearlyEqualArgumentsUseLimit) {
  const double a = 3.0;
  const double b = std::nextafter(3.0, 4.0);
  EXPECT_EQ(hhb::logarithmic_mean(a, b), a);
  EXPECT_EQ(hhb::p_logarithmic_mean(a, b, -2.0), a);
}

TEST(Means, Invariants) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int i = 0; i < 50; ++i) {
    double a = u(rng);
    double b = u(rng);
    if (a == b) continue;
    const double G = hhb::geometric_mean(a, b);
    const double L = hhb::logarithmic_mean(a, b);
    const double A = hhb::arithmetic_mean(a, b);
    const double K = hhb::quadratic_mean(a, b);
    EXPECT_NEAR(G * G, a * b, 1e-12 * a * b);
    EXPECT_LE(G, L * (1 + 1e-12));
    EXPECT_LE(L, A * (1 + 1e-12));
    EXPECT_LE(A, K * (1 + 1e-12));
    for (double m : {G, L, A, K}) {
      EXPECT_GE(m, std::min(a, b) * (1 - 1e-12));
      EXPECT_LE(m, std::max(a, b) * (1 + 1e-12));
    }
  }
}

TEST(Means, DispatchAndErrors) {
  const auto v = hhb::mean(MeanKind::p_logarithmic, 1, 2, 2.0);
  EXPECT_EQ(v.kind, MeanKind::p_logarithmic);
  EXPECT_NEAR(v.value, std::sqrt(7.0 / 3.0), 1e-15);
  EXPECT_EQ(hhb::mean(MeanKind::quadratic, 0, 0).value, 0.0);
  EXPECT_EQ(kind_of([] { hhb::mean(MeanKind::p_logarithmic, 1, 2, -1.0); }), ErrorKind::BadExponent);
  EXPECT_EQ(kind_of([] { hhb::mean(MeanKind::p_logarithmic, 1, 2, 0.0); }), ErrorKind::BadExponent);
  EXPECT_EQ(kind_of([] { hhb::mean(MeanKind::p_logarithmic, 1, 2); }), ErrorKind::BadExponent);
  EXPECT_EQ(kind_of([] { hhb::mean(MeanKind::geometric, 0, 2); }), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { hhb::mean(MeanKind::arithmetic, -1, 2); }), ErrorKind::DomainViolation);
}

TEST(Propositions, WorkedValues) {
  const auto p301 = hhb::prop_bound(StatementId::p301, 1, 3, 2);
  EXPECT_NEAR(p301.lhs, std::abs(5.0 - 26.0 / 6.0), 1e-13);
  EXPECT_NEAR(p301.rhs, 2.0, 1e-13);
  EXPECT_TRUE(p301.holds);

  const auto p302 = hhb::prop_bound(StatementId::p302, 1, 2);
  EXPECT_NEAR(p302.lhs, std::abs(0.75 - std::log(2.0)), 1e-14);
  EXPECT_NEAR(p302.rhs, (1.0 / 12.0) * (1.0 / 2.25 + 1.25), 1e-14);
  EXPECT_TRUE(p302.holds);

  const auto p304 = hhb::prop_bound(StatementId::p304, 1, 2);
  EXPECT_NEAR(p304.rhs, 0.15625, 1e-14);
  EXPECT_NEAR(p304.lhs, p302.lhs, 1e-15);
}

TEST(Propositions, MatchCorollaries) {
  const hhb::HKernel id = hhb::HKernel::identity();
  for (const auto& [a, b] : {std::pair{1.0, 2.0}, {1.0, 3.0}, {0.5, 4.0}, {2.0, 2.001}}) {
    const hhb::Interval iv(a, b);
    const auto recip = hhb::FunctionSpec::reciprocal(iv);
    EXPECT_NEAR(hhb::prop_bound(StatementId::p302, a, b).rhs, hhb::cor1_bound(recip, iv, id).rhs,
                1e-10);
    EXPECT_NEAR(hhb::prop_bound(StatementId::p304, a, b).rhs, hhb::cor2_bound(recip, iv, id).rhs,
                1e-10);
    for (int n : {2, 3, 4, -2}) {
      const auto f = hhb::FunctionSpec::power(n, iv);
      const auto p301 = hhb::prop_bound(StatementId::p301, a, b, n);
      const auto c1 = hhb::cor1_bound(f, iv, id);
      EXPECT_NEAR(p301.rhs, c1.rhs, 1e-10) << n;
      EXPECT_NEAR(p301.lhs, c1.lhs, 1e-9) << n;
      EXPECT_NEAR(hhb::prop_bound(StatementId::p303, a, b, n).rhs, hhb::cor2_bound(f, iv, id).rhs,
                  1e-10);
      for (double q : {1.5, 2.0, 3.0}) {
        const auto p305 = hhb::prop_bound(StatementId::p305, a, b, n, q);
        EXPECT_NEAR(p305.rhs, hhb::cor7_bound(f, iv, id, q).rhs, 1e-10) << n << " " << q;
        EXPECT_TRUE(p305.holds);
        const double p = q / (q - 1);
        EXPECT_NEAR(0.25 * std::pow(0.5, 1 / p), std::pow(2.0, 1 / q - 3), 1e-15);
      }
    }
  }
}

TEST(Propositions, AllHoldOnGrid) {
  for (const auto& [a, b] : {std::pair{1.0, 2.0}, {1.0, 3.0}, {0.5, 4.0}, {2.0, 2.001}}) {
    for (auto id : {StatementId::p302, StatementId::p304}) {
      EXPECT_GE(hhb::prop_bound(id, a, b).gap, -1e-9);
    }
    for (int n : {2, 3, 4, -2}) {
      for (auto id : {StatementId::p301, StatementId::p303}) {
        EXPECT_GE(hhb::prop_bound(id, a, b, n).gap, -1e-9);
      }
      for (double q : {1.5, 2.0, 3.0}) {
        EXPECT_GE(hhb::prop_bound(StatementId::p305, a, b, n, q).gap, -1e-9);
      }
    }
  }
}

TEST(Propositions, Errors) {
  EXPECT_EQ(kind_of([] { hhb::prop_bound(StatementId::p301, 1, 2, -1); }),
            ErrorKind::ExcludedExponent);
  EXPECT_EQ(kind_of([] { hhb::prop_bound(StatementId::p303, 1, 2, 0); }), ErrorKind::BadExponent);
  EXPECT_EQ(kind_of([] { hhb::prop_bound(StatementId::p301, 1, 2); }), ErrorKind::BadExponent);
  EXPECT_EQ(kind_of([] { hhb::prop_bound(StatementId::p305, 1, 2, 2, 1.0); }),
            ErrorKind::BadExponent);
  EXPECT_EQ(kind_of([] { hhb::prop_bound(StatementId::p302, 0, 2); }), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of([] { hhb::prop_bound(StatementId::p302, 2, 1); }), ErrorKind::DomainViolation);
  EXPECT_NO_THROW(hhb::prop_bound(StatementId::p302, 1, 2, 7));
}

}  // namespace
