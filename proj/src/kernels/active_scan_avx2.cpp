#include <immintrin.h>

#include "mtm/kernels.hpp"

namespace mtm::kernels {

namespace {

// True if any of the 8 slots equals u or v.
inline bool touches(const NodeId* slots, __m256i u, __m256i v) {
  const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(slots));
  const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(slots + 4));
  const __m256i hit = _mm256_or_si256(
      _mm256_or_si256(_mm256_cmpeq_epi64(lo, u), _mm256_cmpeq_epi64(lo, v)),
      _mm256_or_si256(_mm256_cmpeq_epi64(hi, u), _mm256_cmpeq_epi64(hi, v)));
  return _mm256_movemask_epi8(hit) != 0;
}

}  // namespace

static_assert(kSlotWidth == 8, "AVX2 kernel assumes two 4x64-bit lanes per process");

void active_scan_avx2(const ActiveSet& set, const EventProbe& probe,
                      std::span<std::uint8_t> actions) {
  const std::size_t n = set.sizes.size();
  const __m256i u = _mm256_set1_epi64x(probe.u);
  const __m256i v = _mm256_set1_epi64x(probe.v);
  const __m256i t = _mm256_set1_epi64x(probe.t);
  const __m256i delta = _mm256_set1_epi64x(probe.delta);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i last =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(set.last_time.data() + i));
    const __m256i expired = _mm256_cmpgt_epi64(_mm256_sub_epi64(t, last), delta);
    const int expired_mask = _mm256_movemask_pd(_mm256_castsi256_pd(expired));
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t p = i + k;
      if (((expired_mask >> k) & 1) != 0 || set.sizes[p] >= probe.l_max) {
        actions[p] = kRetire;
      } else {
        actions[p] = touches(set.slots.data() + p * kSlotWidth, u, v) ? kExtend : kKeep;
      }
    }
  }
  for (; i < n; ++i) {
    if (set.sizes[i] >= probe.l_max || probe.t - set.last_time[i] > probe.delta) {
      actions[i] = kRetire;
    } else {
      actions[i] = touches(set.slots.data() + i * kSlotWidth, u, v) ? kExtend : kKeep;
    }
  }
}

}  // namespace mtm::kernels
