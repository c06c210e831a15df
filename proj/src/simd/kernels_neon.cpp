// AArch64 variants. NEON has no gather, so cell data is loaded lane by lane;
// the arithmetic stays vectorized two lanes wide.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "renyi/simd/kernels.hpp"

namespace renyi::simd {
namespace {

struct LaneCell {
  std::int64_t index[2];
  float64x2_t t;
};

inline LaneCell locate_cells(float64x2_t u, float64x2_t cells, float64x2_t last) {
  const float64x2_t v = vmulq_f64(u, cells);
  float64x2_t j = vrndmq_f64(v);
  j = vminq_f64(vmaxq_f64(j, vdupq_n_f64(0.0)), last);
  const int64x2_t ji = vcvtq_s64_f64(j);
  return {{vgetq_lane_s64(ji, 0), vgetq_lane_s64(ji, 1)}, vsubq_f64(v, j)};
}

inline float64x2_t load_pair(const double* base, const LaneCell& cell, std::int64_t stride,
                             std::int64_t offset) {
  const float64x1_t lo = vld1_f64(base + cell.index[0] * stride + offset);
  const float64x1_t hi = vld1_f64(base + cell.index[1] * stride + offset);
  return vcombine_f64(lo, hi);
}

}  // namespace

void cdf_sum_neon(const CdfSumArgs& args, std::span<const double> xs, std::span<double> out) {
  const std::size_t cells = args.coeffs.size() / 4;
  const float64x2_t cells_v = vdupq_n_f64(static_cast<double>(cells));
  const float64x2_t last_v = vdupq_n_f64(static_cast<double>(cells - 1));
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t n_v = vdupq_n_f64(args.n);
  const double* c = args.coeffs.data();

  std::size_t k = 0;
  for (; k + 2 <= xs.size(); k += 2) {
    const float64x2_t x = vld1q_f64(xs.data() + k);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::int64_t i = args.first_branch; i <= args.last_branch; ++i) {
      const float64x2_t xi = vaddq_f64(x, vdupq_n_f64(static_cast<double>(i)));
      const float64x2_t u = vsubq_f64(one, vdivq_f64(n_v, xi));
      const LaneCell cell = locate_cells(u, cells_v, last_v);
      const float64x2_t c0 = load_pair(c, cell, 4, 0);
      const float64x2_t c1 = load_pair(c, cell, 4, 1);
      const float64x2_t c2 = load_pair(c, cell, 4, 2);
      const float64x2_t c3 = load_pair(c, cell, 4, 3);
      const float64x2_t t = cell.t;
      const float64x2_t p = vaddq_f64(
          c0, vmulq_f64(t, vaddq_f64(c1, vmulq_f64(t, vaddq_f64(c2, vmulq_f64(t, c3))))));
      const float64x2_t b = vdupq_n_f64(args.base[static_cast<std::size_t>(i - args.first_branch)]);
      acc = vaddq_f64(acc, vsubq_f64(p, b));
    }
    vst1q_f64(out.data() + k, acc);
  }
  for (; k < xs.size(); ++k) {
    out[k] = detail::cdf_sum_one(args, xs[k]);
  }
}

void density_sum_neon(const DensitySumArgs& args, std::span<const double> xs,
                      std::span<double> out) {
  const std::size_t cells = args.values.size() - 1;
  const float64x2_t cells_v = vdupq_n_f64(static_cast<double>(cells));
  const float64x2_t last_v = vdupq_n_f64(static_cast<double>(cells - 1));
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t n_v = vdupq_n_f64(args.n);
  const float64x2_t shift_v = vdupq_n_f64(args.n - 1.0);
  const double* f = args.values.data();

  std::size_t k = 0;
  for (; k + 2 <= xs.size(); k += 2) {
    const float64x2_t x = vld1q_f64(xs.data() + k);
    const float64x2_t num = vaddq_f64(x, shift_v);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::int64_t i = args.first_branch; i <= args.last_branch; ++i) {
      const float64x2_t xi = vaddq_f64(x, vdupq_n_f64(static_cast<double>(i)));
      const float64x2_t w = vdivq_f64(num, vmulq_f64(xi, vsubq_f64(xi, one)));
      const float64x2_t u = vsubq_f64(one, vdivq_f64(n_v, xi));
      const LaneCell cell = locate_cells(u, cells_v, last_v);
      const float64x2_t lo = load_pair(f, cell, 1, 0);
      const float64x2_t hi = load_pair(f, cell, 1, 1);
      const float64x2_t value = vaddq_f64(lo, vmulq_f64(cell.t, vsubq_f64(hi, lo)));
      acc = vaddq_f64(acc, vmulq_f64(w, value));
    }
    vst1q_f64(out.data() + k, acc);
  }
  for (; k < xs.size(); ++k) {
    out[k] = detail::density_sum_one(args, xs[k]);
  }
}

void renyi_iterate_neon(std::span<double> xs, double n, std::uint32_t steps) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t n_v = vdupq_n_f64(n);
  std::size_t k = 0;
  for (; k + 2 <= xs.size(); k += 2) {
    float64x2_t x = vld1q_f64(xs.data() + k);
    for (std::uint32_t s = 0; s < steps; ++s) {
      const uint64x2_t at_one = vceqq_f64(x, one);
      const float64x2_t y = vdivq_f64(n_v, vsubq_f64(one, x));
      const float64x2_t frac = vsubq_f64(y, vrndmq_f64(y));
      x = vbslq_f64(at_one, vdupq_n_f64(0.0), frac);
    }
    vst1q_f64(xs.data() + k, x);
  }
  for (; k < xs.size(); ++k) {
    xs[k] = detail::renyi_iterate_one(xs[k], n, steps);
  }
}

}  // namespace renyi::simd

#endif  // __aarch64__
