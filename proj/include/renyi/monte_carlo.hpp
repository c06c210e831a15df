#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "renyi/parameter.hpp"
#include "renyi/simd/kernels.hpp"

namespace renyi {

/// Samples per independently seeded generator stream. Fixed, so results
/// do not depend on how batches are scheduled.
inline constexpr std::size_t kMonteCarloBatch = std::size_t{1} << 16;

/// Identifies the sampling scheme in output metadata.
inline constexpr std::string_view kGeneratorName =
    "mt19937_64 per 65536-sample batch, seed_seq{seed_lo, seed_hi, batch_lo, batch_hi}, "
    "53-bit uniform doubles";

struct MonteCarloResult {
  explicit MonteCarloResult(Parameter parameter) : n(parameter) {}

  Parameter n;
  std::uint32_t iterations = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  simd::Isa isa = simd::Isa::scalar;
  std::vector<double> sorted_points;  // R_N^n(x_j), ascending
  double ks_rho = 0.0;                // sup |F_emp - rho_N CDF|
  double ks_uniform = 0.0;            // sup |F_emp - x|

  /// Fraction of sample points <= x.
  double empirical_cdf(double x) const;
};

/// Uniform starting points, `iterations` applications of R_N, and the KS
/// distances of the empirical distribution.
MonteCarloResult monte_carlo_cdf(Parameter n, std::uint32_t iterations, std::size_t samples,
                                 std::uint64_t seed, simd::Isa isa = simd::best_isa());

/// The `count` starting points drawn for batch `batch`.
std::vector<double> uniform_batch(std::uint64_t seed, std::uint64_t batch, std::size_t count);

/// Two-sided Kolmogorov-Smirnov statistic of sorted samples against `cdf`.
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

}  // namespace renyi
