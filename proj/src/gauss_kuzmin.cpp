#include "renyi/gauss_kuzmin.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/invariant_measure.hpp"
#include "renyi/qn_analysis.hpp"

namespace renyi {
namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a[k] - b[k]));
  }
  return worst;
}

}  // namespace

std::optional<std::pair<double, double>> fit_geometric_rate(const std::vector<double>& errors,
                                                            const std::vector<std::size_t>& window) {
  if (window.size() < 2) {
    return std::nullopt;
  }
  const double count = static_cast<double>(window.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t k : window) {
    mean_x += static_cast<double>(k);
    mean_y += std::log(errors[k]);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k : window) {
    const double dx = static_cast<double>(k) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[k]) - mean_y);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t k : window) {
    const double r = std::log(errors[k]) - (mean_y + slope * (static_cast<double>(k) - mean_x));
    rss += r * r;
  }
  return std::pair{std::exp(slope), std::sqrt(rss / count)};
}

IterationReport iterate_gk(const GridFunction& initial, std::size_t steps, const TailPolicy& tail,
                           simd::Isa isa) {
  if (steps < 1) {
    throw DomainError("iterate_gk needs at least one step");
  }
  const Parameter n = initial.parameter();
  const RhoMeasure rho(n);
  const GridFunction target =
      GridFunction::sample(n, GridKind::cdf, initial.cells(), [&](double x) { return rho.cdf(x); });

  IterationReport report{n};
  report.cells = initial.cells();
  report.tail = tail;
  report.isa = isa;
  report.q_n = static_cast<double>(qn_exact(n).q);
  report.floor = sup_distance(gk_step_cdf(target, tail, isa).values(), target.values());

  GridFunction current = initial;
  report.errors.push_back(sup_distance(current.values(), target.values()));
  for (std::size_t s = 0; s < steps; ++s) {
    current = gk_step_cdf(current, tail, isa);
    report.errors.push_back(sup_distance(current.values(), target.values()));
  }

  const double low = 100.0 * report.floor;
  const double high = report.errors.front() / 10.0;
  for (std::size_t k = 0; k < report.errors.size(); ++k) {
    if (report.errors[k] > low && report.errors[k] < high) {
      report.fit_window.push_back(k);
    }
  }
  if (report.fit_window.size() < 2) {
    report.window_relaxed = true;
    report.fit_window.clear();
    for (std::size_t k = 1; k < report.errors.size(); ++k) {
      if (report.errors[k] > low) {
        report.fit_window.push_back(k);
      }
    }
  }
  if (auto fit = fit_geometric_rate(report.errors, report.fit_window)) {
    report.fitted_rate = fit->first;
    report.fit_residual = fit->second;
  }
  report.final_cdf.assign(current.values().begin(), current.values().end());
  return report;
}

double max_abs_derivative(const GridFunction& f) {
  const auto v = f.values();
  const std::size_t m = f.cells();
  const double scale = static_cast<double>(m);
  double worst = std::abs(-3.0 * v[0] + 4.0 * v[1] - v[2]) * 0.5 * scale;
  worst = std::max(worst, std::abs(3.0 * v[m] - 4.0 * v[m - 1] + v[m - 2]) * 0.5 * scale);
  for (std::size_t k = 1; k < m; ++k) {
    worst = std::max(worst, std::abs(v[k + 1] - v[k - 1]) * 0.5 * scale);
  }
  return worst;
}

ContractionReport contraction_check(const GridFunction& initial, std::size_t steps,
                                    const TailPolicy& tail, simd::Isa isa) {
  if (initial.kind() != GridKind::density) {
    throw DomainError("contraction_check iterates densities");
  }
  double scale = 0.0;
  for (double v : initial.values()) {
    scale = std::max(scale, std::abs(v));
  }
  ContractionReport report;
  report.derivative_max.push_back(max_abs_derivative(initial));
  if (report.derivative_max.front() <= 1e-12 * std::max(scale, 1.0)) {
    throw DomainError("initial density has vanishing derivative (M_0 = 0)");
  }
  GridFunction current = initial;
  for (std::size_t s = 0; s < steps; ++s) {
    // U fixes constants, so dropping one leaves f' alone. Without this the
    // sums stay O(1) and their rounding swamps M_n once it nears 1e-10.
    // A truncated sum with no tail does not fix constants; leave it be.
    std::vector<double> centred(current.values().begin(), current.values().end());
    const double shift = tail.mode == TailMode::analytic ? centred[centred.size() / 2] : 0.0;
    for (double& v : centred) {
      v -= shift;
    }
    current = gk_step_density(GridFunction(initial.parameter(), GridKind::density, std::move(centred)),
                              tail, isa);
    report.derivative_max.push_back(max_abs_derivative(current));
    report.ratios.push_back(report.derivative_max.back() /
                            report.derivative_max[report.derivative_max.size() - 2]);
  }
  return report;
}

}  // namespace renyi
