#include <cstdlib>
#include <cstring>

#include "mtm/kernels.hpp"

namespace mtm::kernels {

bool avx2_supported() noexcept {
#if defined(MTM_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa selected_isa() noexcept {
  static const Isa isa = [] {
    const char* forced = std::getenv("MTM_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Isa::scalar;
    return avx2_supported() ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

void active_scan(const ActiveSet& set, const EventProbe& probe, std::span<std::uint8_t> actions) {
#if defined(MTM_HAVE_AVX2_TU)
  if (selected_isa() == Isa::avx2) {
    active_scan_avx2(set, probe, actions);
    return;
  }
#endif
  active_scan_scalar(set, probe, actions);
}

}  // namespace mtm::kernels
