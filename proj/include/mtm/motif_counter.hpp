#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mtm/io.hpp"
#include "mtm/motif_code.hpp"

namespace mtm {

inline constexpr std::size_t kMaxCountedEvents = 4;

/// Instance counts of every l-event motif type seen under a Δ_C limit.
struct SpectrumCounts {
  std::size_t l = 0;
  Timestamp delta_c = 0;
  std::map<MotifCode, std::uint64_t> counts;  // zero counts omitted
  std::uint64_t total = 0;

  std::uint64_t count(const MotifCode& code) const {
    auto it = counts.find(code);
    return it == counts.end() ? 0 : it->second;
  }
};

struct CountOptions {
  /// Consecutive events may be exactly delta_c apart when true.
  bool inclusive = true;
  /// Worker threads; 0 reads MTM_WORKERS, then falls back to the hardware.
  unsigned workers = 0;
};

/// Counts ordered event tuples e_1 < ... < e_l (graph order) in which each
/// event shares a node with some earlier one and consecutive timestamps are
/// at most delta_c apart. Overlapping instances are all counted.
/// Requires 2 <= l <= kMaxCountedEvents and delta_c > 0.
SpectrumCounts count_motifs(const TemporalGraph& g, std::size_t l, Timestamp delta_c,
                            const CountOptions& options = {});

/// Same as count_motifs for several sizes in one traversal; result order
/// follows `sizes`.
std::vector<SpectrumCounts> count_motifs(const TemporalGraph& g, std::span<const std::size_t> sizes,
                                         Timestamp delta_c, const CountOptions& options = {});

/// Worker count resolved from options, MTM_WORKERS and the hardware.
unsigned resolve_workers(unsigned requested);

}  // namespace mtm
