#include <atomic>
#include <cstdlib>
#include <string_view>

#include "gravnoise/kernels.hpp"

namespace gravnoise::kernels {

#if defined(GRAVNOISE_HAVE_AVX2)
const KernelSet& avx2_kernel_set() noexcept;
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(GRAVNOISE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("GRAVNOISE_SIMD")) {
    const std::string_view choice{env};
    if (choice == "scalar") return Backend::kScalar;
    if (choice == "avx2" && avx2) return Backend::kAvx2;
  }
  return avx2 ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& selected() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

const KernelSet* avx2_kernels() noexcept {
#if defined(GRAVNOISE_HAVE_AVX2)
  if (cpu_has_avx2()) return &avx2_kernel_set();
#endif
  return nullptr;
}

bool backend_available(Backend b) noexcept {
  return b == Backend::kScalar || avx2_kernels() != nullptr;
}

const KernelSet& active() noexcept {
  if (selected().load(std::memory_order_relaxed) == Backend::kAvx2) {
    if (const KernelSet* k = avx2_kernels()) return *k;
  }
  return scalar_kernels();
}

Backend active_backend() noexcept { return selected().load(std::memory_order_relaxed); }

bool set_backend(Backend b) noexcept {
  if (!backend_available(b)) return false;
  selected().store(b, std::memory_order_relaxed);
  return true;
}

}  // namespace gravnoise::kernels
