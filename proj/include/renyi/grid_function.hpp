#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "renyi/parameter.hpp"

namespace renyi {

enum class GridKind {
  cdf,      // F_{N,n}: monotone, F(0) = 0, F(1) = 1
  density,  // f_{N,n}(x) = (x + N - 1) F'_{N,n}(x)
};

/// Samples of a function on the uniform grid x_k = k/M, k = 0..M.
class GridFunction {
 public:
  GridFunction(Parameter n, GridKind kind, std::vector<double> values);

  /// Samples `f` at the M+1 nodes.
  static GridFunction sample(Parameter n, GridKind kind, std::size_t cells,
                             const std::function<double(double)>& f);

  Parameter parameter() const noexcept { return n_; }
  GridKind kind() const noexcept { return kind_; }
  /// Number of cells M (one less than the number of nodes).
  std::size_t cells() const noexcept { return values_.size() - 1; }
  double node(std::size_t k) const noexcept {
    return static_cast<double>(k) / static_cast<double>(cells());
  }
  std::vector<double> nodes() const;
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_.at(k); }

  /// Piecewise-cubic monotone interpolant for CDFs, linear for densities.
  double interpolate(double x) const;

 private:
  Parameter n_;
  GridKind kind_;
  std::vector<double> values_;
};

/// True when values never decrease.
bool is_monotone(std::span<const double> values);

/// Shape-preserving piecewise cubic Hermite interpolant on a uniform grid
/// over [0,1] (Fritsch-Butland slopes, as in PCHIP). Each cell stores the
/// polynomial in the local coordinate t = x*M - k in Horner-ready order
/// c0 + t*(c1 + t*(c2 + t*c3)).
class MonotoneCubic {
 public:
  explicit MonotoneCubic(std::span<const double> values);

  std::size_t cells() const noexcept { return coeffs_.size() / 4; }
  /// 4*M coefficients, cell-major.
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<const double> slopes() const noexcept { return slopes_; }

  double operator()(double x) const;

  /// Coefficients e_1..e_3 of p(1 - d) = p(1) + e_1 d + e_2 d^2 + e_3 d^3
  /// for the last cell's polynomial.
  std::array<double, 3> expansion_at_one() const;

 private:
  std::vector<double> coeffs_;
  std::vector<double> slopes_;  // dF/dx at the nodes
};

/// Clamped linear interpolation of uniform-grid samples over [0,1].
double interpolate_linear(std::span<const double> values, double x);

}  // namespace renyi
