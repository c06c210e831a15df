#pragma once

// Data-parallel inner loops of the Gauss-Kuzmin iteration and the
// Monte-Carlo orbit sampler. Every kernel exists as a scalar reference and
// as vector variants (AVX2 on x86-64, NEON on AArch64) that vectorize
// across grid nodes or samples. Each lane performs exactly the scalar
// sequence of IEEE operations, summing over branches in increasing i, so
// all variants agree bit-for-bit (the build disables FMA contraction).

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>

namespace renyi::simd {

struct Cell {
  std::int32_t index;
  double t;  // local coordinate, nominally in [0, 1)
};

/// Cell of a uniform grid over [0,1] containing u, clamped to
/// [0, last_cell]. Every kernel variant reproduces this operation order.
inline Cell locate_cell(double u, double cells, std::int32_t last_cell) {
  const double v = u * cells;
  const double j = std::fmin(std::fmax(std::floor(v), 0.0), static_cast<double>(last_cell));
  return {static_cast<std::int32_t>(j), v - j};
}

inline double horner(const double* c, double t) {
  return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
}

/// Inputs for sum_i [p(1 - N/(x+i)) - p(1 - N/i)] with p a piecewise cubic.
struct CdfSumArgs {
  std::span<const double> coeffs;  // 4 per cell, Horner order
  double n = 0.0;
  std::int64_t first_branch = 0;  // i runs over [first_branch, last_branch]
  std::int64_t last_branch = 0;
  std::span<const double> base;   // p(1 - N/i), one per branch
};

/// Inputs for sum_i P_{N,i}(x) f(1 - N/(x+i)) with f piecewise linear.
struct DensitySumArgs {
  std::span<const double> values;  // M+1 node values
  double n = 0.0;
  std::int64_t first_branch = 0;
  std::int64_t last_branch = 0;
};

using CdfSumFn = void (*)(const CdfSumArgs&, std::span<const double> xs, std::span<double> out);
using DensitySumFn = void (*)(const DensitySumArgs&, std::span<const double> xs,
                              std::span<double> out);
/// Replaces every x by R_N^steps(x).
using RenyiIterateFn = void (*)(std::span<double> xs, double n, std::uint32_t steps);

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
/// Widest available variant.
Isa best_isa();

struct KernelTable {
  Isa isa;
  CdfSumFn cdf_sum;
  DensitySumFn density_sum;
  RenyiIterateFn renyi_iterate;
};

/// Throws std::invalid_argument if `isa` is unavailable.
const KernelTable& kernels(Isa isa);
const KernelTable& active_kernels();

// Per-variant entry points.
void cdf_sum_scalar(const CdfSumArgs&, std::span<const double>, std::span<double>);
void density_sum_scalar(const DensitySumArgs&, std::span<const double>, std::span<double>);
void renyi_iterate_scalar(std::span<double>, double, std::uint32_t);

#if defined(RENYI_HAVE_AVX2_KERNELS)
void cdf_sum_avx2(const CdfSumArgs&, std::span<const double>, std::span<double>);
void density_sum_avx2(const DensitySumArgs&, std::span<const double>, std::span<double>);
void renyi_iterate_avx2(std::span<double>, double, std::uint32_t);
#endif

#if defined(__aarch64__)
void cdf_sum_neon(const CdfSumArgs&, std::span<const double>, std::span<double>);
void density_sum_neon(const DensitySumArgs&, std::span<const double>, std::span<double>);
void renyi_iterate_neon(std::span<double>, double, std::uint32_t);
#endif

namespace detail {

// Single-lane bodies shared by the scalar kernels and the vector remainders.

inline double cdf_sum_one(const CdfSumArgs& a, double x) {
  const double cells = static_cast<double>(a.coeffs.size() / 4);
  const auto last = static_cast<std::int32_t>(a.coeffs.size() / 4) - 1;
  double acc = 0.0;
  for (std::int64_t i = a.first_branch; i <= a.last_branch; ++i) {
    const double u = 1.0 - a.n / (x + static_cast<double>(i));
    const Cell c = locate_cell(u, cells, last);
    const double p = horner(a.coeffs.data() + 4 * static_cast<std::size_t>(c.index), c.t);
    acc += p - a.base[static_cast<std::size_t>(i - a.first_branch)];
  }
  return acc;
}

inline double density_sum_one(const DensitySumArgs& a, double x) {
  const double cells = static_cast<double>(a.values.size() - 1);
  const auto last = static_cast<std::int32_t>(a.values.size()) - 2;
  const double shift = a.n - 1.0;
  double acc = 0.0;
  for (std::int64_t i = a.first_branch; i <= a.last_branch; ++i) {
    const double xi = x + static_cast<double>(i);
    const double w = (x + shift) / (xi * (xi - 1.0));
    const double u = 1.0 - a.n / xi;
    const Cell c = locate_cell(u, cells, last);
    const double lo = a.values[static_cast<std::size_t>(c.index)];
    const double hi = a.values[static_cast<std::size_t>(c.index) + 1];
    acc += w * (lo + c.t * (hi - lo));
  }
  return acc;
}

inline double renyi_iterate_one(double x, double n, std::uint32_t steps) {
  for (std::uint32_t s = 0; s < steps; ++s) {
    if (x == 1.0) {
      x = 0.0;
      continue;
    }
    const double y = n / (1.0 - x);
    x = y - std::floor(y);
  }
  return x;
}

}  // namespace detail
}  // namespace renyi::simd
