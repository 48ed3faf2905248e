#include <atomic>
#include <cstdlib>
#include <string_view>

#include "afsi/simd.hpp"

namespace afsi::simd {
namespace {

bool cpu_has_avx2() {
#if defined(AFSI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("AFSI_FORCE_SCALAR");
      env != nullptr && std::string_view(env) != "0" && std::string_view(env).size() > 0)
    return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::scalar: break;
  }
  return "scalar";
}

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  active().store(isa, std::memory_order_relaxed);
  return isa;
}

const KernelTable& kernels() {
#if defined(AFSI_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2_kernels();
#endif
  return scalar_kernels();
}

}  // namespace afsi::simd
