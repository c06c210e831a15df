#include "renyi/monte_carlo.hpp"

#include <algorithm>
#include <random>

#include "renyi/invariant_measure.hpp"

namespace renyi {

std::vector<double> uniform_batch(std::uint64_t seed, std::uint64_t batch, std::size_t count) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(batch), hi(batch)};
  std::mt19937_64 engine(seq);
  std::vector<double> xs(count);
  for (double& x : xs) {
    x = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }
  return xs;
}

MonteCarloResult monte_carlo_cdf(Parameter n, std::uint32_t iterations, std::size_t samples,
                                 std::uint64_t seed, simd::Isa isa) {
  if (samples < 1) {
    throw DomainError("monte_carlo_cdf needs at least one sample");
  }
  const auto& kernel = simd::kernels(isa);
  MonteCarloResult out{n};
  out.iterations = iterations;
  out.samples = samples;
  out.seed = seed;
  out.isa = isa;
  out.sorted_points.reserve(samples);
  for (std::uint64_t batch = 0; out.sorted_points.size() < samples; ++batch) {
    const std::size_t count = std::min(kMonteCarloBatch, samples - out.sorted_points.size());
    std::vector<double> xs = uniform_batch(seed, batch, count);
    kernel.renyi_iterate(xs, n.as_double(), iterations);
    out.sorted_points.insert(out.sorted_points.end(), xs.begin(), xs.end());
  }
  std::sort(out.sorted_points.begin(), out.sorted_points.end());

  const RhoMeasure rho(n);
  out.ks_rho = ks_distance(out.sorted_points, [&](double x) { return rho.cdf(x); });
  out.ks_uniform = ks_distance(out.sorted_points, [](double x) { return x; });
  return out;
}

double MonteCarloResult::empirical_cdf(double x) const {
  const auto it = std::upper_bound(sorted_points.begin(), sorted_points.end(), x);
  return static_cast<double>(it - sorted_points.begin()) / static_cast<double>(sorted_points.size());
}

double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  const double count = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = cdf(sorted[k]);
    worst = std::max({worst, static_cast<double>(k + 1) / count - f, f - static_cast<double>(k) / count});
  }
  return worst;
}

}  // namespace renyi
