#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "renyi/grid_function.hpp"
#include "renyi/transfer.hpp"

namespace renyi {

/// Sup-grid errors e_n = max_x |F_{N,n}(x) - rho_N([0,x])| of a
/// Gauss-Kuzmin run and the geometric rate fitted to them.
struct IterationReport {
  explicit IterationReport(Parameter parameter) : n(parameter) {}

  Parameter n;
  std::size_t cells = 0;
  TailPolicy tail;
  std::vector<double> errors;  // e_0 .. e_steps
  /// Residual of rho_N's CDF under one step; the discretization floor.
  double floor = 0.0;
  /// exp(slope) of the least-squares line through (n, log e_n).
  std::optional<double> fitted_rate;
  /// Root-mean-square residual of that line, in log units.
  double fit_residual = 0.0;
  std::vector<std::size_t> fit_window;
  /// The strict window 100*floor < e_n < e_0/10 held fewer than two points
  /// and the fit fell back to every n >= 1 with e_n > 100*floor.
  bool window_relaxed = false;
  double q_n = 0.0;
  simd::Isa isa = simd::Isa::scalar;
  std::vector<double> final_cdf;
};

/// Iterates gk_step_cdf `steps` times from `initial` and fits the decay.
IterationReport iterate_gk(const GridFunction& initial, std::size_t steps, const TailPolicy& tail,
                           simd::Isa isa = simd::best_isa());

/// Least-squares fit of log(errors[k]) against k over `window`; returns
/// exp(slope) and the RMS residual.
std::optional<std::pair<double, double>> fit_geometric_rate(const std::vector<double>& errors,
                                                            const std::vector<std::size_t>& window);

struct ContractionReport {
  std::vector<double> derivative_max;  // M_0 .. M_steps
  std::vector<double> ratios;          // M_{k+1}/M_k
};

/// max_x |f'(x)| from central differences (second-order one-sided at the
/// ends).
double max_abs_derivative(const GridFunction& f);

/// Derivative sup-norms along f_0, U f_0, U^2 f_0, ...; rejects f_0 with
/// vanishing derivative.
ContractionReport contraction_check(const GridFunction& initial, std::size_t steps,
                                    const TailPolicy& tail, simd::Isa isa = simd::best_isa());

}  // namespace renyi
