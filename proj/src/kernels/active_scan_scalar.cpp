#include "mtm/kernels.hpp"

namespace mtm::kernels {

void active_scan_scalar(const ActiveSet& set, const EventProbe& probe,
                        std::span<std::uint8_t> actions) {
  const std::size_t n = set.sizes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (set.sizes[i] >= probe.l_max || probe.t - set.last_time[i] > probe.delta) {
      actions[i] = kRetire;
      continue;
    }
    const NodeId* slots = set.slots.data() + i * kSlotWidth;
    std::uint8_t action = kKeep;
    for (std::size_t k = 0; k < kSlotWidth; ++k) {
      if (slots[k] == probe.u || slots[k] == probe.v) {
        action = kExtend;
        break;
      }
    }
    actions[i] = action;
  }
}

}  // namespace mtm::kernels
