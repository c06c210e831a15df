#include "renyi/simd/kernels.hpp"

namespace renyi::simd {

void cdf_sum_scalar(const CdfSumArgs& args, std::span<const double> xs, std::span<double> out) {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out[k] = detail::cdf_sum_one(args, xs[k]);
  }
}

void density_sum_scalar(const DensitySumArgs& args, std::span<const double> xs,
                        std::span<double> out) {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out[k] = detail::density_sum_one(args, xs[k]);
  }
}

void renyi_iterate_scalar(std::span<double> xs, double n, std::uint32_t steps) {
  for (double& x : xs) {
    x = detail::renyi_iterate_one(x, n, steps);
  }
}

}  // namespace renyi::simd
