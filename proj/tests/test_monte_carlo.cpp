#include <gtest/gtest.h>

#include <cmath>

#include "renyi/monte_carlo.hpp"
#include "renyi/qn_analysis.hpp"
#include "support/oracles.hpp"

using namespace renyi;

TEST(UniformBatch, DeterministicAndInRange) {
  const auto a = uniform_batch(7, 3, 1000);
  const auto b = uniform_batch(7, 3, 1000);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, uniform_batch(7, 4, 1000));
  EXPECT_NE(a, uniform_batch(8, 3, 1000));
  for (double x : a) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  // a short batch is a prefix of a long one
  const auto c = uniform_batch(7, 3, 10);
  EXPECT_TRUE(std::equal(c.begin(), c.end(), a.begin()));
}

TEST(KsDistance, HandComputed) {
  const std::vector<double> pts{0.1, 0.5, 0.9};
  // steps at 1/3, 2/3, 1 against F(x)=x: max(1/3-0.1, 0.5-1/3, 1-0.9, ...)
  EXPECT_NEAR(ks_distance(pts, [](double x) { return x; }), 1.0 / 3.0 - 0.1 + 0.0, 1e-15);
}

TEST(MonteCarlo, ZeroIterationsIsUniform) {
  for (std::int64_t n : {2, 5}) {
    const auto r = monte_carlo_cdf(Parameter(n), 0, 1'000'000, 3);
    EXPECT_LE(r.ks_uniform, 1.63 / 1000.0);
    EXPECT_TRUE(std::is_sorted(r.sorted_points.begin(), r.sorted_points.end()));
    EXPECT_EQ(r.sorted_points.size(), 1'000'000u);
  }
}

TEST(MonteCarlo, N2MatchesRho) {
  const auto r = monte_carlo_cdf(Parameter(2), 20, 1'000'000, 7);
  const double q = static_cast<double>(qn_exact(Parameter(2)).q);
  EXPECT_LE(r.ks_rho, 3.0 / 1000.0 + std::pow(q, 20.0));
  EXPECT_GT(r.ks_uniform, 0.05);  // rho is far from uniform for N=2
}

TEST(MonteCarlo, N10MatchesRho) {
  const auto r = monte_carlo_cdf(Parameter(10), 10, 1'000'000, 1);
  EXPECT_LE(r.ks_rho, 0.004);
}

TEST(MonteCarlo, KsMatchesIndependentRecount) {
  const auto r = monte_carlo_cdf(Parameter(3), 4, 5000, 2);
  double worst = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double x = k / 20000.0;
    worst = std::max(worst, std::abs(r.empirical_cdf(x) - oracle::rho_cdf(3, x)));
  }
  // a grid scan can only see less than the exact supremum
  EXPECT_LE(worst, r.ks_rho + 1e-15);
  EXPECT_GT(worst, r.ks_rho - 2.0 / 5000.0);
}

TEST(MonteCarlo, Reproducible) {
  const auto a = monte_carlo_cdf(Parameter(2), 20, 200000, 7);
  const auto b = monte_carlo_cdf(Parameter(2), 20, 200000, 7);
  EXPECT_EQ(a.sorted_points, b.sorted_points);
  EXPECT_EQ(a.ks_rho, b.ks_rho);
  const auto c = monte_carlo_cdf(Parameter(2), 20, 200000, 8);
  EXPECT_NE(a.sorted_points, c.sorted_points);
}

TEST(MonteCarlo, SamplesExtendAcrossBatches) {
  // the first S samples do not depend on how many more are drawn
  const auto small = monte_carlo_cdf(Parameter(2), 0, kMonteCarloBatch + 10, 4);
  std::vector<double> expected = uniform_batch(4, 0, kMonteCarloBatch);
  const auto tail = uniform_batch(4, 1, 10);
  expected.insert(expected.end(), tail.begin(), tail.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(small.sorted_points, expected);
}

TEST(MonteCarlo, Validation) {
  EXPECT_THROW(monte_carlo_cdf(Parameter(2), 1, 0, 1), DomainError);
  const auto r = monte_carlo_cdf(Parameter(2), 1, 1, 1);
  EXPECT_EQ(r.sorted_points.size(), 1u);
  EXPECT_EQ(r.empirical_cdf(1.0), 1.0);
}
