#include "renyi/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace renyi {
namespace {

std::string render(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw DomainError("malformed number '" + std::string(text) + "' on CSV line " + std::to_string(line));
  }
  return value;
}

}  // namespace

Json to_json(const IterationReport& report) {
  Json j;
  j["N"] = report.n.value();
  j["n"] = report.errors.size() - 1;
  j["e_n"] = report.errors;
  j["fitted_rate"] = report.fitted_rate ? Json(*report.fitted_rate) : Json(nullptr);
  j["fit_residual"] = report.fit_residual;
  j["fit_window"] = report.fit_window;
  j["window_relaxed"] = report.window_relaxed;
  j["floor"] = report.floor;
  j["q_N"] = report.q_n;
  j["M"] = report.cells;
  j["I"] = report.tail.cutoff;
  j["tail_mode"] = report.tail.mode == TailMode::analytic ? "analytic" : "bound_only";
  j["seed"] = nullptr;
  j["kernel"] = std::string(simd::isa_name(report.isa));
  return j;
}

Json to_json(const ZetaValue& zeta) {
  Json j;
  j["s"] = zeta.s;
  j["a"] = zeta.a;
  j["value"] = to_decimal_string(zeta.value, zeta.precision);
  j["error_bound"] = to_decimal_string(zeta.error_bound, 3);
  j["direct_terms"] = zeta.direct_terms;
  return j;
}

Json to_json(const QnCertificate& cert) {
  Json j;
  j["N"] = cert.n.value();
  j["q_N"] = to_decimal_string(cert.q, cert.precision);
  j["error_bound"] = to_decimal_string(cert.error_bound, 3);
  j["lower"] = shortest_decimal(cert.bounds.lower);
  j["upper"] = shortest_decimal(cert.bounds.upper);
  j["zeta2"] = to_json(cert.zeta2);
  j["zeta3"] = to_json(cert.zeta3);
  j["precision"] = cert.precision;
  return j;
}

Json to_json(const MonteCarloResult& result, double envelope) {
  Json j;
  j["N"] = result.n.value();
  j["n"] = result.iterations;
  j["samples"] = result.samples;
  j["seed"] = result.seed;
  j["generator"] = std::string(kGeneratorName);
  j["kernel"] = std::string(simd::isa_name(result.isa));
  j["ks_rho"] = result.ks_rho;
  j["ks_uniform"] = result.ks_uniform;
  j["envelope"] = envelope;
  j["within_envelope"] = result.ks_rho <= envelope;
  return j;
}

Json to_json(const std::vector<BoundTableRow>& rows) {
  Json j = Json::array();
  for (const auto& row : rows) {
    j.push_back(Json{{"N", row.n}, {"lower", row.lower_text}, {"upper", row.upper_text}});
  }
  return j;
}

void write_cdf_csv(std::ostream& out, std::span<const double> xs, std::span<const double> values) {
  out << "x,F\n";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out << render(xs[k]) << ',' << render(values[k]) << '\n';
  }
}

void write_empirical_cdf_csv(std::ostream& out, const MonteCarloResult& result, std::size_t points) {
  std::vector<double> xs(points + 1);
  std::vector<double> fs(points + 1);
  for (std::size_t k = 0; k <= points; ++k) {
    xs[k] = static_cast<double>(k) / static_cast<double>(points);
    fs[k] = result.empirical_cdf(xs[k]);
  }
  write_cdf_csv(out, xs, fs);
}

void write_table_csv(std::ostream& out, const std::vector<BoundTableRow>& rows) {
  out << "N,lower,upper\n";
  for (const auto& row : rows) {
    out << row.n << ',' << row.lower_text << ',' << row.upper_text << '\n';
  }
}

void write_table_text(std::ostream& out, const std::vector<BoundTableRow>& rows) {
  const std::string h0 = "N";
  const std::string h1 = "Lower bound of q_N";
  const std::string h2 = "Upper bound of q_N";
  std::size_t w0 = h0.size();
  std::size_t w1 = h1.size();
  std::size_t w2 = h2.size();
  for (const auto& row : rows) {
    w0 = std::max(w0, std::to_string(row.n).size());
    w1 = std::max(w1, row.lower_text.size());
    w2 = std::max(w2, row.upper_text.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  out << "| " << pad(h0, w0) << " | " << pad(h1, w1) << " | " << pad(h2, w2) << " |\n";
  out << '|' << std::string(w0 + 2, '-') << '|' << std::string(w1 + 2, '-') << '|'
      << std::string(w2 + 2, '-') << "|\n";
  for (const auto& row : rows) {
    out << "| " << pad(std::to_string(row.n), w0) << " | " << pad(row.lower_text, w1) << " | "
        << pad(row.upper_text, w2) << " |\n";
  }
}

CdfSamples read_cdf_csv(std::istream& in) {
  CdfSamples s;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw DomainError("CSV line " + std::to_string(number) + " does not have two columns");
    }
    if (number == 1 && line.find_first_of("0123456789") == std::string::npos) {
      continue;  // header
    }
    s.xs.push_back(parse_double(std::string_view(line).substr(0, comma), number));
    s.values.push_back(parse_double(std::string_view(line).substr(comma + 1), number));
  }
  if (s.xs.size() < 2) {
    throw DomainError("CSV needs at least two data rows");
  }
  if (s.xs.front() != 0.0 || s.xs.back() != 1.0) {
    throw DomainError("CSV x column must run from 0 to 1");
  }
  for (std::size_t k = 1; k < s.xs.size(); ++k) {
    if (!(s.xs[k] > s.xs[k - 1])) {
      throw DomainError("CSV x column must be strictly increasing");
    }
  }
  if (!is_monotone(s.values)) {
    throw DomainError("CSV F column is not monotone");
  }
  if (s.values.front() != 0.0 || s.values.back() != 1.0) {
    throw DomainError("CSV F column must start at 0 and end at 1");
  }
  return s;
}

GridFunction cdf_on_grid(Parameter n, const CdfSamples& samples, std::size_t cells) {
  std::vector<double> values(cells + 1);
  std::size_t seg = 0;
  for (std::size_t k = 0; k <= cells; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(cells);
    while (seg + 2 < samples.xs.size() && samples.xs[seg + 1] < x) {
      ++seg;
    }
    const double x0 = samples.xs[seg];
    const double x1 = samples.xs[seg + 1];
    const double t = std::clamp((x - x0) / (x1 - x0), 0.0, 1.0);
    values[k] = samples.values[seg] + t * (samples.values[seg + 1] - samples.values[seg]);
  }
  return GridFunction(n, GridKind::cdf, std::move(values));
}

}  // namespace renyi
