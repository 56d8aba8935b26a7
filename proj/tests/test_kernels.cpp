#include <random>
#include <vector>

#include "doctest.h"
#include "mtm/kernels.hpp"

using namespace mtm;
using namespace mtm::kernels;

namespace {

struct RandomSet {
  std::vector<NodeId> slots;
  std::vector<Timestamp> last;
  std::vector<std::uint8_t> sizes;

  ActiveSet view() const { return {slots, last, sizes}; }
};

RandomSet random_set(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<NodeId> node(0, 12);
  std::uniform_int_distribution<Timestamp> time(0, 40);
  std::uniform_int_distribution<int> size(1, 6);
  RandomSet s;
  s.slots.assign(n * kSlotWidth, kEmptySlot);
  for (std::size_t i = 0; i < n; ++i) {
    const int sz = size(rng);
    s.sizes.push_back(static_cast<std::uint8_t>(sz));
    s.last.push_back(time(rng));
    for (int k = 0; k <= sz && k < static_cast<int>(kSlotWidth); ++k) {
      s.slots[i * kSlotWidth + static_cast<std::size_t>(k)] = node(rng);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("scalar scan") {
  RandomSet s;
  s.slots.assign(3 * kSlotWidth, kEmptySlot);
  s.slots[0] = 1;
  s.slots[1] = 2;
  s.slots[kSlotWidth] = 3;
  s.slots[kSlotWidth + 1] = 4;
  s.slots[2 * kSlotWidth] = 1;
  s.slots[2 * kSlotWidth + 1] = 5;
  s.last = {10, 10, 0};
  s.sizes = {1, 1, 1};
  std::vector<std::uint8_t> actions(3);
  active_scan_scalar(s.view(), EventProbe{2, 9, 12, 5, 3}, actions);
  CHECK(actions == std::vector<std::uint8_t>{kExtend, kKeep, kRetire});
  s.sizes[1] = 3;
  active_scan_scalar(s.view(), EventProbe{4, 9, 15, 5, 3}, actions);
  CHECK(actions == std::vector<std::uint8_t>{kKeep, kRetire, kRetire});
}

TEST_CASE("empty set") {
  RandomSet s;
  std::vector<std::uint8_t> actions;
  active_scan(s.view(), EventProbe{1, 2, 3, 4, 4}, actions);
  CHECK(actions.empty());
}

TEST_CASE("dispatch agrees with scalar") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 255u}) {
    const RandomSet s = random_set(rng, n);
    for (int probe = 0; probe < 50; ++probe) {
      const EventProbe p{static_cast<NodeId>(rng() % 13), static_cast<NodeId>(rng() % 13),
                         static_cast<Timestamp>(rng() % 60), static_cast<Timestamp>(rng() % 20),
                         static_cast<std::uint8_t>(2 + rng() % 5)};
      std::vector<std::uint8_t> want(n);
      std::vector<std::uint8_t> got(n, 99);
      active_scan_scalar(s.view(), p, want);
      active_scan(s.view(), p, got);
      CHECK(got == want);
    }
  }
}

#if defined(MTM_HAVE_AVX2_TU)
TEST_CASE("avx2 agrees with scalar") {
  if (!avx2_supported()) return;
  std::mt19937_64 rng(23);
  for (std::size_t n = 0; n < 70; ++n) {
    const RandomSet s = random_set(rng, n);
    for (int probe = 0; probe < 40; ++probe) {
      const EventProbe p{static_cast<NodeId>(rng() % 13), static_cast<NodeId>(rng() % 13),
                         static_cast<Timestamp>(rng() % 60), static_cast<Timestamp>(rng() % 20),
                         static_cast<std::uint8_t>(2 + rng() % 5)};
      std::vector<std::uint8_t> want(n);
      std::vector<std::uint8_t> got(n, 99);
      active_scan_scalar(s.view(), p, want);
      active_scan_avx2(s.view(), p, got);
      CHECK(got == want);
    }
  }
}
#endif

TEST_CASE("isa names") {
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
}
