// Compiled with -mavx2 (and without -mfma); only reached after a runtime
// CPU check.

#include <immintrin.h>

#include "renyi/simd/kernels.hpp"

namespace renyi::simd {
namespace {

struct LaneCell {
  __m128i index;  // cell index, four int32 lanes
  __m256d t;
};

inline LaneCell locate_cells(__m256d u, __m256d cells, __m256d last) {
  const __m256d v = _mm256_mul_pd(u, cells);
  __m256d j = _mm256_floor_pd(v);
  j = _mm256_min_pd(_mm256_max_pd(j, _mm256_setzero_pd()), last);
  return {_mm256_cvtpd_epi32(j), _mm256_sub_pd(v, j)};
}

}  // namespace

void cdf_sum_avx2(const CdfSumArgs& args, std::span<const double> xs, std::span<double> out) {
  const std::size_t cells = args.coeffs.size() / 4;
  const __m256d cells_v = _mm256_set1_pd(static_cast<double>(cells));
  const __m256d last_v = _mm256_set1_pd(static_cast<double>(cells - 1));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d n_v = _mm256_set1_pd(args.n);
  const double* c = args.coeffs.data();

  std::size_t k = 0;
  for (; k + 4 <= xs.size(); k += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + k);
    __m256d acc = _mm256_setzero_pd();
    for (std::int64_t i = args.first_branch; i <= args.last_branch; ++i) {
      const __m256d xi = _mm256_add_pd(x, _mm256_set1_pd(static_cast<double>(i)));
      const __m256d u = _mm256_sub_pd(one, _mm256_div_pd(n_v, xi));
      const LaneCell cell = locate_cells(u, cells_v, last_v);
      const __m128i base = _mm_slli_epi32(cell.index, 2);
      const __m256d c0 = _mm256_i32gather_pd(c, base, 8);
      const __m256d c1 = _mm256_i32gather_pd(c + 1, base, 8);
      const __m256d c2 = _mm256_i32gather_pd(c + 2, base, 8);
      const __m256d c3 = _mm256_i32gather_pd(c + 3, base, 8);
      const __m256d t = cell.t;
      const __m256d p = _mm256_add_pd(
          c0, _mm256_mul_pd(t, _mm256_add_pd(c1, _mm256_mul_pd(t, _mm256_add_pd(c2, _mm256_mul_pd(t, c3))))));
      const __m256d b = _mm256_set1_pd(args.base[static_cast<std::size_t>(i - args.first_branch)]);
      acc = _mm256_add_pd(acc, _mm256_sub_pd(p, b));
    }
    _mm256_storeu_pd(out.data() + k, acc);
  }
  for (; k < xs.size(); ++k) {
    out[k] = detail::cdf_sum_one(args, xs[k]);
  }
}

void density_sum_avx2(const DensitySumArgs& args, std::span<const double> xs,
                      std::span<double> out) {
  const std::size_t cells = args.values.size() - 1;
  const __m256d cells_v = _mm256_set1_pd(static_cast<double>(cells));
  const __m256d last_v = _mm256_set1_pd(static_cast<double>(cells - 1));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d n_v = _mm256_set1_pd(args.n);
  const __m256d shift_v = _mm256_set1_pd(args.n - 1.0);
  const double* f = args.values.data();

  std::size_t k = 0;
  for (; k + 4 <= xs.size(); k += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + k);
    const __m256d num = _mm256_add_pd(x, shift_v);
    __m256d acc = _mm256_setzero_pd();
    for (std::int64_t i = args.first_branch; i <= args.last_branch; ++i) {
      const __m256d xi = _mm256_add_pd(x, _mm256_set1_pd(static_cast<double>(i)));
      const __m256d w = _mm256_div_pd(num, _mm256_mul_pd(xi, _mm256_sub_pd(xi, one)));
      const __m256d u = _mm256_sub_pd(one, _mm256_div_pd(n_v, xi));
      const LaneCell cell = locate_cells(u, cells_v, last_v);
      const __m256d lo = _mm256_i32gather_pd(f, cell.index, 8);
      const __m256d hi = _mm256_i32gather_pd(f + 1, cell.index, 8);
      const __m256d value = _mm256_add_pd(lo, _mm256_mul_pd(cell.t, _mm256_sub_pd(hi, lo)));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(w, value));
    }
    _mm256_storeu_pd(out.data() + k, acc);
  }
  for (; k < xs.size(); ++k) {
    out[k] = detail::density_sum_one(args, xs[k]);
  }
}

void renyi_iterate_avx2(std::span<double> xs, double n, std::uint32_t steps) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d n_v = _mm256_set1_pd(n);
  std::size_t k = 0;
  for (; k + 4 <= xs.size(); k += 4) {
    __m256d x = _mm256_loadu_pd(xs.data() + k);
    for (std::uint32_t s = 0; s < steps; ++s) {
      const __m256d at_one = _mm256_cmp_pd(x, one, _CMP_EQ_OQ);
      const __m256d y = _mm256_div_pd(n_v, _mm256_sub_pd(one, x));
      const __m256d frac = _mm256_sub_pd(y, _mm256_floor_pd(y));
      x = _mm256_blendv_pd(frac, _mm256_setzero_pd(), at_one);
    }
    _mm256_storeu_pd(xs.data() + k, x);
  }
  for (; k < xs.size(); ++k) {
    xs[k] = detail::renyi_iterate_one(xs[k], n, steps);
  }
}

}  // namespace renyi::simd
