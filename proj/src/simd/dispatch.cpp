#include <stdexcept>
#include <string>

#include "renyi/simd/kernels.hpp"

namespace renyi::simd {
namespace {

constexpr KernelTable kScalar{Isa::scalar, cdf_sum_scalar, density_sum_scalar,
                              renyi_iterate_scalar};
#if defined(RENYI_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{Isa::avx2, cdf_sum_avx2, density_sum_avx2, renyi_iterate_avx2};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::neon, cdf_sum_neon, density_sum_neon, renyi_iterate_neon};
#endif

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(RENYI_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;  // mandatory in AArch64
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (isa_available(Isa::avx2)) {
    return Isa::avx2;
  }
  if (isa_available(Isa::neon)) {
    return Isa::neon;
  }
  return Isa::scalar;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel variant '" + std::string(isa_name(isa)) +
                                "' is not available on this machine");
  }
  switch (isa) {
#if defined(RENYI_HAVE_AVX2_KERNELS)
    case Isa::avx2:
      return kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

const KernelTable& active_kernels() {
  static const KernelTable& table = kernels(best_isa());
  return table;
}

}  // namespace renyi::simd
