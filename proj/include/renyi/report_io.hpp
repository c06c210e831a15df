#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "renyi/gauss_kuzmin.hpp"
#include "renyi/monte_carlo.hpp"
#include "renyi/qn_analysis.hpp"

namespace renyi {

using Json = nlohmann::ordered_json;

Json to_json(const IterationReport& report);
Json to_json(const QnCertificate& cert);
Json to_json(const ZetaValue& zeta);
Json to_json(const MonteCarloResult& result, double envelope);
Json to_json(const std::vector<BoundTableRow>& rows);

/// Two-column "x,F" CSV with a header row and LF line endings.
void write_cdf_csv(std::ostream& out, std::span<const double> xs, std::span<const double> values);

/// Empirical CDF of `result` at x = k/points, k = 0..points.
void write_empirical_cdf_csv(std::ostream& out, const MonteCarloResult& result, std::size_t points);

void write_table_csv(std::ostream& out, const std::vector<BoundTableRow>& rows);
/// Three aligned columns: N, lower bound of q_N, upper bound of q_N.
void write_table_text(std::ostream& out, const std::vector<BoundTableRow>& rows);

struct CdfSamples {
  std::vector<double> xs;
  std::vector<double> values;
};

/// Reads an "x,F" CSV (header optional). Throws DomainError on malformed
/// rows, non-increasing x, or a range other than [0, 1].
CdfSamples read_cdf_csv(std::istream& in);

/// Resamples (xs, values) onto the uniform M-cell grid by linear
/// interpolation, which keeps monotone data monotone.
GridFunction cdf_on_grid(Parameter n, const CdfSamples& samples, std::size_t cells);

}  // namespace renyi
