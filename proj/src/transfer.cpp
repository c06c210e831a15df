#include "renyi/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace renyi {
namespace {

void require_unit_interval(double x) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw DomainError("x must be a finite number in [0,1], got " + std::to_string(x));
  }
}

void require_branch(Parameter n, std::int64_t i) {
  if (i < n.value()) {
    throw DomainError("branch index " + std::to_string(i) + " is below N");
  }
}

// zeta(k, b) - b^{1-k}/(k-1) - b^{-k}/2, the Bernoulli part of the
// Euler-Maclaurin expansion, through B_8.
double zeta_bernoulli_part(int k, double b) {
  static constexpr double kB2jOverFactorial[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                                 -1.0 / 1209600.0};
  double rising = k;  // k (k+1) ... (k+2j-2)
  double power = std::pow(b, -k - 1);
  const double inv_b2 = 1.0 / (b * b);
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    sum += kB2jOverFactorial[j] * rising * power;
    rising *= (k + 2 * j + 1) * (k + 2 * j + 2);
    power *= inv_b2;
  }
  return sum;
}

}  // namespace

namespace detail {

double hurwitz_zeta2_asymptotic(double b) {
  return 1.0 / b + 0.5 / (b * b) + zeta_bernoulli_part(2, b);
}

double shifted_power_sum_difference(int k, double a, double x) {
  if (x == 0.0) {
    return 0.0;
  }
  const double ax = a + x;
  switch (k) {
    case 1: {
      // psi(a) - psi(a+x), psi(z) ~ log z - 1/(2z) - sum B_2j/(2j z^2j)
      const double log_part = -std::log1p(x / a);
      const double half_part = 0.5 * (1.0 / ax - 1.0 / a);
      auto bern = [](double z) {
        const double z2 = 1.0 / (z * z);
        return z2 * (1.0 / 12.0 - z2 * (1.0 / 120.0 - z2 * (1.0 / 252.0 - z2 / 240.0)));
      };
      return log_part + half_part + (bern(ax) - bern(a));
    }
    case 2:
    case 3: {
      const double kk = k;
      const double lead = (std::pow(ax, 1.0 - kk) - std::pow(a, 1.0 - kk)) / (kk - 1.0);
      const double half = 0.5 * (std::pow(ax, -kk) - std::pow(a, -kk));
      return lead + half + (zeta_bernoulli_part(k, ax) - zeta_bernoulli_part(k, a));
    }
    default:
      throw DomainError("power sums are only provided for k = 1, 2, 3");
  }
}

}  // namespace detail

double branch_weight(Parameter n, std::int64_t i, double x) {
  require_branch(n, i);
  require_unit_interval(x);
  const double xi = x + static_cast<double>(i);
  return (x + (n.as_double() - 1.0)) / (xi * (xi - 1.0));
}

double branch_point(Parameter n, std::int64_t i, double x) {
  require_branch(n, i);
  require_unit_interval(x);
  return 1.0 - n.as_double() / (x + static_cast<double>(i));
}

TailPolicy TailPolicy::for_grid(Parameter n, std::size_t cells) {
  constexpr std::int64_t kMaxCutoff = 1'000'000;
  const std::int64_t scaled = std::min<std::int64_t>(
      n.value() * static_cast<std::int64_t>(cells), kMaxCutoff);
  return {std::max(n.value() + 1000, scaled), TailMode::analytic};
}

void TailPolicy::validate(Parameter n) const {
  if (cutoff < n.value()) {
    throw DomainError("tail cutoff " + std::to_string(cutoff) + " is below N = " +
                      std::to_string(n.value()));
  }
}

double transfer_tail_weight(Parameter n, double x, std::int64_t cutoff) {
  return (x + (n.as_double() - 1.0)) / (x + static_cast<double>(cutoff));
}

double apply_transfer(Parameter n, const std::function<double(double)>& f, double x,
                      const TailPolicy& tail) {
  tail.validate(n);
  require_unit_interval(x);
  double sum = 0.0;
  for (std::int64_t i = n.value(); i <= tail.cutoff; ++i) {
    sum += branch_weight(n, i, x) * f(branch_point(n, i, x));
  }
  if (tail.mode == TailMode::analytic) {
    sum += f(1.0) * transfer_tail_weight(n, x, tail.cutoff);
  }
  return sum;
}

double cdf_tail(const MonotoneCubic& interp, Parameter n, double x, std::int64_t cutoff) {
  const auto e = interp.expansion_at_one();
  const double a = static_cast<double>(cutoff) + 1.0;
  double scale = 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 3; ++k) {
    scale *= n.as_double();
    sum += e[static_cast<std::size_t>(k - 1)] * scale * detail::shifted_power_sum_difference(k, a, x);
  }
  return sum;
}

double cdf_tail_bound(double lipschitz, Parameter n, double x, std::int64_t cutoff) {
  return lipschitz * n.as_double() * x / static_cast<double>(cutoff);
}

double density_tail(std::span<const double> values, Parameter n, double x, std::int64_t cutoff) {
  // On the last cell f(u) = f(1) - s (1 - u), so the remainder is
  // f(1) W - s N sum_{i>I} P_{N,i}(x)/(x+i), and by partial fractions
  // sum_{i>I} 1/((x+i)^2 (x+i-1)) = 1/(x+I) - zeta(2, x+I+1).
  const std::size_t m = values.size() - 1;
  const double f1 = values[m];
  const double slope = (values[m] - values[m - 1]) * static_cast<double>(m);
  const double xi = x + static_cast<double>(cutoff);
  const double weight = x + (n.as_double() - 1.0);
  const double first_moment = 1.0 / xi - detail::hurwitz_zeta2_asymptotic(xi + 1.0);
  return f1 * weight / xi - slope * n.as_double() * weight * first_moment;
}

GridFunction gk_step_cdf(const GridFunction& cdf, const TailPolicy& tail, simd::Isa isa) {
  const Parameter n = cdf.parameter();
  if (cdf.kind() != GridKind::cdf) {
    throw DomainError("gk_step_cdf needs a distribution-function grid");
  }
  if (!is_monotone(cdf.values())) {
    throw DomainError("distribution function is not monotone");
  }
  tail.validate(n);

  const MonotoneCubic interp(cdf.values());
  const std::int64_t first = n.value();
  std::vector<double> base(static_cast<std::size_t>(tail.cutoff - first + 1));
  for (std::int64_t i = first; i <= tail.cutoff; ++i) {
    base[static_cast<std::size_t>(i - first)] = interp(1.0 - n.as_double() / static_cast<double>(i));
  }

  const std::vector<double> xs = cdf.nodes();
  std::vector<double> out(xs.size());
  const simd::CdfSumArgs args{interp.coefficients(), n.as_double(), first, tail.cutoff, base};
  simd::kernels(isa).cdf_sum(args, xs, out);

  if (tail.mode == TailMode::analytic) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      out[k] += cdf_tail(interp, n, xs[k], tail.cutoff);
    }
  }
  out.front() = 0.0;
  out.back() = 1.0;
  // Each term is non-decreasing in x; only rounding can break monotonicity.
  double running = 0.0;
  for (double& v : out) {
    running = std::clamp(std::max(running, v), 0.0, 1.0);
    v = running;
  }
  return GridFunction(n, GridKind::cdf, std::move(out));
}

GridFunction gk_step_density(const GridFunction& density, const TailPolicy& tail, simd::Isa isa) {
  const Parameter n = density.parameter();
  if (density.kind() != GridKind::density) {
    throw DomainError("gk_step_density needs a density grid");
  }
  tail.validate(n);

  const std::vector<double> xs = density.nodes();
  std::vector<double> out(xs.size());
  const simd::DensitySumArgs args{density.values(), n.as_double(), n.value(), tail.cutoff};
  simd::kernels(isa).density_sum(args, xs, out);
  if (tail.mode == TailMode::analytic) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      out[k] += density_tail(density.values(), n, xs[k], tail.cutoff);
    }
  }
  return GridFunction(n, GridKind::density, std::move(out));
}

}  // namespace renyi
