#pragma once

// Perron-Frobenius operator of R_N under rho_N and the Gauss-Kuzmin steps
//
//   U f(x)      = sum_{i>=N} P_{N,i}(x) f(u_{N,i}(x))
//   F_{n+1}(x)  = sum_{i>=N} [F_n(u_{N,i}(x)) - F_n(u_{N,i}(0))]
//
// with P_{N,i}(x) = (x+N-1)/((x+i)(x+i-1)) and u_{N,i}(x) = 1 - N/(x+i).
// The series are summed in increasing i up to a cutoff I and closed with
// an analytic remainder; see TailPolicy.

#include <cstdint>
#include <functional>

#include "renyi/grid_function.hpp"
#include "renyi/parameter.hpp"
#include "renyi/simd/kernels.hpp"

namespace renyi {

/// P_{N,i}(x).
double branch_weight(Parameter n, std::int64_t i, double x);
/// u_{N,i}(x), the i-th inverse branch of R_N.
double branch_point(Parameter n, std::int64_t i, double x);

enum class TailMode {
  /// Close the series with the telescoped weight (operator form) or the
  /// last-cell expansion of the interpolant (grid steps).
  analytic,
  /// Drop everything past the cutoff.
  bound_only,
};

struct TailPolicy {
  std::int64_t cutoff = 0;  // last branch index I summed explicitly
  TailMode mode = TailMode::analytic;

  /// I = max(N + 1000, min(N*M, 10^6)). For N*M <= 10^6 every discarded
  /// branch image falls in the last grid cell, where the analytic closure
  /// is exact for the interpolant.
  static TailPolicy for_grid(Parameter n, std::size_t cells);

  /// Throws DomainError unless cutoff >= N.
  void validate(Parameter n) const;
};

/// sum_{i>I} P_{N,i}(x) = (x+N-1)/(x+I).
double transfer_tail_weight(Parameter n, double x, std::int64_t cutoff);

/// U f(x) truncated at the cutoff; the analytic mode adds f(1) times the
/// remaining weight, so U1 = 1 up to rounding.
double apply_transfer(Parameter n, const std::function<double(double)>& f, double x,
                      const TailPolicy& tail);

/// sum_{i>I} [p(1 - N/(x+i)) - p(1 - N/i)] for p the last-cell cubic of
/// `interp` (exact for the interpolant when N/(I+1) <= 1/M).
double cdf_tail(const MonotoneCubic& interp, Parameter n, double x, std::int64_t cutoff);

/// What bound_only mode may drop: sum_{i>I} N x/(i(x+i)) <= N x/I, times a
/// Lipschitz constant of F on [1 - N/(I+1), 1].
double cdf_tail_bound(double lipschitz, Parameter n, double x, std::int64_t cutoff);

/// sum_{i>I} P_{N,i}(x) f(u_{N,i}(x)) for f the last-cell line of the
/// piecewise-linear density.
double density_tail(std::span<const double> values, Parameter n, double x, std::int64_t cutoff);

/// One Gauss-Kuzmin step on distribution functions. Rejects non-monotone
/// input; the result is re-pinned to F(0) = 0, F(1) = 1.
GridFunction gk_step_cdf(const GridFunction& cdf, const TailPolicy& tail,
                         simd::Isa isa = simd::best_isa());

/// One step f_{n+1} = U f_n on densities (linear interpolation between
/// nodes).
GridFunction gk_step_density(const GridFunction& density, const TailPolicy& tail,
                             simd::Isa isa = simd::best_isa());

namespace detail {
/// sum_{i>=a} [(i+x)^{-k} - i^{-k}] for k = 1, 2, 3 and a >= 100, from the
/// asymptotic expansions of digamma and Hurwitz zeta.
double shifted_power_sum_difference(int k, double a, double x);
/// zeta(2, b) for b >= 100.
double hurwitz_zeta2_asymptotic(double b);
}  // namespace detail

}  // namespace renyi
