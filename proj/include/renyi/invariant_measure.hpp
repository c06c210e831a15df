#pragma once

#include "renyi/parameter.hpp"

namespace renyi {

/// The R_N-invariant probability measure
///
///   rho_N(A) = 1/log(N/(N-1)) * integral_A dx/(x + N - 1).
class RhoMeasure {
 public:
  explicit RhoMeasure(Parameter n);

  Parameter parameter() const noexcept { return n_; }
  /// 1/log(N/(N-1)), correctly rounded from a 50-digit evaluation.
  double normalizer() const noexcept { return normalizer_; }

  /// rho_N([0, x]) = log((x+N-1)/(N-1)) / log(N/(N-1)).
  double cdf(double x) const;
  /// rho_N([a, b]).
  double interval(double a, double b) const;
  /// normalizer/(x + N - 1).
  double density(double x) const;

 private:
  Parameter n_;
  double normalizer_;
};

/// rho_N(R_N^{-1}([a, b])), summing the inverse-branch images
/// [u_{N,i}(a), u_{N,i}(b)] for i = N..cutoff and closing the series with
/// its telescoped remainder.
double rho_preimage(const RhoMeasure& m, double a, double b, std::int64_t cutoff);

}  // namespace renyi
