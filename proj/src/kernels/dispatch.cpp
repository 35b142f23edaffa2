#include <cstdlib>
#include <iostream>
#include <string_view>

#include "mbird/kernels.hpp"

namespace mbird::kernels {

#if defined(MBIRD_HAVE_AVX2_TU)
namespace avx2 {
const BitKernels& kernels() noexcept;
}
#endif

const BitKernels* avx2_kernels() noexcept {
#if defined(MBIRD_HAVE_AVX2_TU)
  static const bool supported = __builtin_cpu_supports("avx2") != 0;
  return supported ? &avx2::kernels() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const BitKernels& select_kernels() noexcept {
  const char* env = std::getenv("MBIRD_KERNELS");
  std::string_view choice = env != nullptr ? env : "auto";
  if (choice == "scalar") return scalar_kernels();
  const BitKernels* wide = avx2_kernels();
  if (choice == "avx2" && wide == nullptr) {
    std::cerr << "mbird: AVX2 kernels requested but unavailable; using scalar\n";
  }
  return wide != nullptr ? *wide : scalar_kernels();
}

}  // namespace

const BitKernels& active_kernels() noexcept {
  static const BitKernels& chosen = select_kernels();
  return chosen;
}

}  // namespace mbird::kernels
