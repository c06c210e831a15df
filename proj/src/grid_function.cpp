#include "renyi/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "renyi/simd/kernels.hpp"

namespace renyi {

GridFunction::GridFunction(Parameter n, GridKind kind, std::vector<double> values)
    : n_(n), kind_(kind), values_(std::move(values)) {
  if (values_.size() < 3) {
    throw DomainError("a grid function needs at least two cells");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw DomainError("grid values must be finite");
    }
  }
}

GridFunction GridFunction::sample(Parameter n, GridKind kind, std::size_t cells,
                                  const std::function<double(double)>& f) {
  std::vector<double> values(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) {
    values[k] = f(static_cast<double>(k) / static_cast<double>(cells));
  }
  return GridFunction(n, kind, std::move(values));
}

std::vector<double> GridFunction::nodes() const {
  std::vector<double> xs(values_.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    xs[k] = node(k);
  }
  return xs;
}

double GridFunction::interpolate(double x) const {
  if (kind_ == GridKind::density) {
    return interpolate_linear(values_, x);
  }
  return MonotoneCubic(values_)(x);
}

bool is_monotone(std::span<const double> values) {
  return std::is_sorted(values.begin(), values.end());
}

MonotoneCubic::MonotoneCubic(std::span<const double> values) {
  if (values.size() < 3) {
    throw DomainError("monotone cubic needs at least two cells");
  }
  const std::size_t m = values.size() - 1;
  const double scale = static_cast<double>(m);
  const double h = 1.0 / scale;
  std::vector<double> secant(m);
  for (std::size_t k = 0; k < m; ++k) {
    secant[k] = (values[k + 1] - values[k]) * scale;
  }

  slopes_.assign(m + 1, 0.0);
  for (std::size_t k = 1; k < m; ++k) {
    const double s0 = secant[k - 1];
    const double s1 = secant[k];
    if (s0 * s1 > 0.0) {
      slopes_[k] = 2.0 / (1.0 / s0 + 1.0 / s1);
    }
  }
  // Three-point one-sided end slopes, limited to keep the shape.
  auto end_slope = [](double s0, double s1) {
    double d = 0.5 * (3.0 * s0 - s1);
    if (d * s0 <= 0.0) {
      return 0.0;
    }
    if (s0 * s1 <= 0.0 && std::abs(d) > std::abs(3.0 * s0)) {
      d = 3.0 * s0;
    }
    return d;
  };
  slopes_[0] = end_slope(secant[0], secant[1]);
  slopes_[m] = end_slope(secant[m - 1], secant[m - 2]);

  coeffs_.resize(4 * m);
  for (std::size_t k = 0; k < m; ++k) {
    const double y0 = values[k];
    const double y1 = values[k + 1];
    const double d0 = h * slopes_[k];
    const double d1 = h * slopes_[k + 1];
    coeffs_[4 * k + 0] = y0;
    coeffs_[4 * k + 1] = d0;
    coeffs_[4 * k + 2] = 3.0 * (y1 - y0) - 2.0 * d0 - d1;
    coeffs_[4 * k + 3] = 2.0 * (y0 - y1) + d0 + d1;
  }
}

double MonotoneCubic::operator()(double x) const {
  const auto cell = simd::locate_cell(x, static_cast<double>(cells()),
                                      static_cast<std::int32_t>(cells()) - 1);
  return simd::horner(coeffs_.data() + 4 * static_cast<std::size_t>(cell.index), cell.t);
}

std::array<double, 3> MonotoneCubic::expansion_at_one() const {
  const double* c = coeffs_.data() + 4 * (cells() - 1);
  const double m = static_cast<double>(cells());
  return {-m * (c[1] + 2.0 * c[2] + 3.0 * c[3]), m * m * (c[2] + 3.0 * c[3]),
          -m * m * m * c[3]};
}

double interpolate_linear(std::span<const double> values, double x) {
  const auto m = static_cast<std::int32_t>(values.size() - 1);
  const auto cell = simd::locate_cell(x, static_cast<double>(m), m - 1);
  const double lo = values[static_cast<std::size_t>(cell.index)];
  const double hi = values[static_cast<std::size_t>(cell.index) + 1];
  return lo + cell.t * (hi - lo);
}

}  // namespace renyi
