#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "renyi/invariant_measure.hpp"
#include "renyi/transfer.hpp"
#include "support/oracles.hpp"

using namespace renyi;

TEST(RhoMeasure, Normalizer) {
  for (std::int64_t n : {2, 3, 10, 1000, 1000000}) {
    const RhoMeasure m{Parameter(n)};
    EXPECT_GT(m.normalizer(), 0.0);
    EXPECT_NEAR(m.interval(0.0, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(m.normalizer() * std::log1p(1.0L / (n - 1)), 1.0, 1e-15);
  }
}

TEST(RhoMeasure, CdfExamples) {
  const RhoMeasure m{Parameter(2)};
  EXPECT_EQ(m.cdf(0.0), 0.0);
  EXPECT_DOUBLE_EQ(m.cdf(1.0), 1.0);
  // log2(1.5)
  EXPECT_NEAR(m.cdf(0.5), 0.584962500721156181453738943947816508759814407692481060455, 1e-15);
  EXPECT_THROW(m.cdf(-0.01), DomainError);
  EXPECT_THROW(m.cdf(1.01), DomainError);
}

TEST(RhoMeasure, IntervalExamples) {
  EXPECT_NEAR(RhoMeasure{Parameter(2)}.interval(0.0, 1.0), 1.0, 1e-15);
  EXPECT_EQ(RhoMeasure{Parameter(3)}.interval(0.25, 0.25), 0.0);
  const double quad = oracle::simpson([](double x) { return 1.0 / ((x + 1.0) * std::log(2.0)); },
                                      0.0, 0.5, 2000);
  EXPECT_NEAR(RhoMeasure{Parameter(2)}.interval(0.0, 0.5), quad, 1e-13);
  EXPECT_THROW(RhoMeasure{Parameter(2)}.interval(0.6, 0.5), DomainError);
}

TEST(RhoMeasure, DensityExamples) {
  const RhoMeasure m{Parameter(2)};
  EXPECT_NEAR(m.density(1.0), 0.7213475204444817, 1e-15);
  EXPECT_NEAR(m.density(0.0), 1.4426950408889634, 1e-15);
  for (std::int64_t n : {2, 5, 40}) {
    const RhoMeasure mn{Parameter(n)};
    EXPECT_NEAR(oracle::simpson([&](double x) { return mn.density(x); }, 0.0, 1.0, 2000), 1.0, 1e-12);
  }
  EXPECT_THROW(m.density(2.0), DomainError);
}

TEST(RhoMeasure, DensityIsStrictlyDecreasing) {
  const RhoMeasure m{Parameter(4)};
  double last = m.density(0.0);
  for (int k = 1; k <= 100; ++k) {
    const double v = m.density(k / 100.0);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, last);
    last = v;
  }
}

TEST(RhoMeasure, CdfMatchesQuadrature) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 20);
    const RhoMeasure m{Parameter(n)};
    const double x = u(rng);
    const double quad = oracle::simpson([&](double t) { return oracle::rho_density(n, t); }, 0.0, x, 4000);
    ASSERT_NEAR(m.cdf(x), quad, 1e-12);
    ASSERT_NEAR(m.cdf(x), oracle::rho_cdf(n, x), 5e-16);
  }
}

TEST(RhoMeasure, CdfMonotone) {
  const RhoMeasure m{Parameter(7)};
  double last = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double v = m.cdf(k / 1000.0);
    ASSERT_GT(v, last);
    last = v;
  }
}

TEST(RhoMeasure, InvariantUnderTheMap) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::int64_t n : {2, 3, 10}) {
    const RhoMeasure m{Parameter(n)};
    for (int k = 0; k < 200; ++k) {
      double a = u(rng), b = u(rng);
      if (a > b) {
        std::swap(a, b);
      }
      ASSERT_NEAR(rho_preimage(m, a, b, n + 1000), m.interval(a, b), 1e-10)
          << "N=" << n << " [" << a << "," << b << "]";
    }
  }
}

TEST(RhoMeasure, PreimageAgainstBruteForce) {
  // rho([u_i(a), u_i(b)]) = norm * log1p((b-a)/((a+i-1)(b+i))), summed to K
  // plus (b-a)/(K+a) for the rest, which is off by O(1/K^2)
  const std::int64_t n = 3;
  const RhoMeasure m{Parameter(n)};
  const long double a = 0.2L, b = 0.7L;
  const std::int64_t last = 2'000'000;
  long double total = (b - a) / (static_cast<long double>(last) + a);
  for (std::int64_t k = last; k >= n; --k) {
    const long double i = static_cast<long double>(k);
    total += std::log1p((b - a) / ((a + i - 1) * (b + i)));
  }
  total /= std::log1p(1.0L / (n - 1));
  EXPECT_NEAR(rho_preimage(m, 0.2, 0.7, n + 1000), static_cast<double>(total), 1e-11);
}
