#include <cstdlib>
#include <string>

#include "curvekit/simd/kernels.hpp"

namespace curvekit::simd {

#if defined(CURVEKIT_HAVE_AVX2_TU)
const KernelTable& avx2_kernel_table();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(CURVEKIT_HAVE_AVX2_TU)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() {
  static const KernelTable& selected = []() -> const KernelTable& {
    const char* forced = std::getenv("CURVEKIT_SIMD");
    if (forced != nullptr && std::string(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
    return scalar_kernels();
  }();
  return selected;
}

}  // namespace curvekit::simd
