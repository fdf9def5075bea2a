#include "possweep/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace possweep::kernels {

namespace {

constexpr KernelTable kScalarTable{Backend::Scalar, &scalar::weno5_batch, &scalar::stage_combine};

#if defined(POSSWEEP_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{Backend::Avx2, &avx2::weno5_batch, &avx2::stage_combine};
#endif

Backend detect() noexcept {
  Backend best = available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
  if (const char* env = std::getenv("POSSWEEP_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && available(Backend::Avx2)) return Backend::Avx2;
  }
  return best;
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> current{&table(detect())};
  return current;
}

} // namespace

bool available(Backend b) noexcept {
  switch (b) {
  case Backend::Scalar: return true;
  case Backend::Avx2:
#if defined(POSSWEEP_HAVE_AVX2_KERNELS)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  }
  return false;
}

std::string_view name(Backend b) noexcept {
  switch (b) {
  case Backend::Scalar: return "scalar";
  case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& table(Backend b) noexcept {
#if defined(POSSWEEP_HAVE_AVX2_KERNELS)
  if (b == Backend::Avx2 && available(Backend::Avx2)) return kAvx2Table;
#endif
  (void)b;
  return kScalarTable;
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

void set_active(Backend b) noexcept { slot().store(&table(b), std::memory_order_release); }

} // namespace possweep::kernels
