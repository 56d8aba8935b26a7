#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant; `active_scan` picks one at
// runtime. Set MTM_SIMD=scalar to force the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "mtm/io.hpp"

namespace mtm::kernels {

/// Node slots reserved per active process. A process of l events touches at
/// most l + 1 nodes, so this covers l_max <= 7.
inline constexpr std::size_t kSlotWidth = 8;
/// Filler for unused slots; never equal to a (non-negative) node id.
inline constexpr NodeId kEmptySlot = -1;

enum ActiveAction : std::uint8_t {
  kKeep = 0,    // untouched by this event
  kRetire = 1,  // saturated (size >= l_max) or expired (t - last > delta)
  kExtend = 2,  // alive and shares a node with the event
};

/// Structure-of-arrays view over n active processes.
struct ActiveSet {
  std::span<const NodeId> slots;          // n * kSlotWidth
  std::span<const Timestamp> last_time;   // n
  std::span<const std::uint8_t> sizes;    // n
};

struct EventProbe {
  NodeId u = 0;
  NodeId v = 0;
  Timestamp t = 0;
  Timestamp delta = 0;
  std::uint8_t l_max = 0;
};

/// Writes one ActiveAction per process into `actions` (size n).
void active_scan_scalar(const ActiveSet& set, const EventProbe& probe,
                        std::span<std::uint8_t> actions);
#if defined(MTM_HAVE_AVX2_TU)
void active_scan_avx2(const ActiveSet& set, const EventProbe& probe,
                      std::span<std::uint8_t> actions);
#endif

enum class Isa { scalar, avx2 };

bool avx2_supported() noexcept;
/// ISA chosen for dispatch: best supported, unless MTM_SIMD=scalar.
Isa selected_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

void active_scan(const ActiveSet& set, const EventProbe& probe, std::span<std::uint8_t> actions);

}  // namespace mtm::kernels
