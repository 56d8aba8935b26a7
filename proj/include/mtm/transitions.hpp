#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "mtm/io.hpp"
#include "mtm/motif_code.hpp"

namespace mtm {

/// Motif transition `from -> to`; `from` is always a one-event-shorter prefix
/// of `to`. Stops are tracked separately (TransitionProfile::stop_counts).
struct TransitionKey {
  MotifCode from;
  MotifCode to;

  friend bool operator==(const TransitionKey&, const TransitionKey&) = default;
  friend std::strong_ordering operator<=>(const TransitionKey& a, const TransitionKey& b) {
    if (auto c = a.from <=> b.from; c != 0) return c;
    return a.to <=> b.to;
  }
};

struct DegreePair {
  std::uint64_t in = 0;
  std::uint64_t out = 0;

  friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

struct DeltaSum {
  double sum = 0.0;
  std::uint64_t count = 0;

  double mean() const noexcept { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
};

struct ExtractionParams {
  Timestamp delta = 3600;
  std::size_t l_max = 4;
};

/// Next-code probabilities out of one motif. Stop mass is implicit.
using TransitionRow = std::map<MotifCode, double>;

/// Everything the generator needs, extracted from one input stream.
struct TransitionProfile {
  ExtractionParams params;

  // Shape of the input stream.
  std::uint64_t event_count = 0;
  std::uint64_t static_edge_count = 0;
  std::uint64_t node_count = 0;

  // Cold events: (in, out) degree per node of their static projection, their
  // timestamps (sorted), and the number of cold events on each cold static
  // edge (sorted descending).
  std::vector<DegreePair> k_ce;
  std::vector<Timestamp> t_ce;
  std::vector<std::uint64_t> ce_edge_weights;
  std::uint64_t cold_event_count = 0;

  std::map<MotifCode, TransitionRow> probs;
  std::map<TransitionKey, double> rates;  // 1/seconds

  // Raw tallies behind probs and rates.
  std::map<TransitionKey, std::uint64_t> counts;
  std::map<TransitionKey, DeltaSum> delta_t_sums;
  std::map<MotifCode, std::uint64_t> stop_counts;

  /// Mean static-edge count of the final motif of each transition process.
  double mu = 1.0;
};

/// Stop probability of a row: 1 - sum of its entries (1 for missing rows).
double stop_probability(const TransitionProfile& profile, const MotifCode& from);

/// Recomputes probs and rates from counts, stop_counts and delta_t_sums.
/// Mean transition times below one second are floored to one second.
void derive_probabilities_and_rates(TransitionProfile& profile);

enum class ProcessEnd { size_limit, time_limit, end_of_stream };

/// One transition process found in the input: its cold event, the events
/// that extended it (graph indices, cold event first), and its final code.
struct ProcessTrace {
  std::size_t cold_event = 0;
  std::vector<std::size_t> events;
  MotifCode final_code;
  ProcessEnd end = ProcessEnd::end_of_stream;
};

struct ExtractionResult {
  TransitionProfile profile;
  std::vector<ProcessTrace> processes;  // in cold-event order
  std::vector<std::size_t> cold_events; // graph indices, ascending
};

/// Single forward pass over `g` identifying cold events and motif
/// transitions. An event extends every live active process sharing a node
/// with it; it is cold iff it extends none. Processes retire (and count as a
/// stop at their current code) when saturated at l_max, when the gap since
/// their last event exceeds delta, or at end of stream.
///
/// Requires 2 <= l_max <= MotifCode::kMaxEvents, delta > 0, g non-empty.
ExtractionResult extract_profile_traced(const TemporalGraph& g, const ExtractionParams& params);
TransitionProfile extract_profile(const TemporalGraph& g, const ExtractionParams& params);

/// cold_event_count / event_count.
double cold_event_fraction(const TransitionProfile& profile);

/// Distinct observed transition keys (stops excluded).
std::size_t observed_transition_type_count(const TransitionProfile& profile);

}  // namespace mtm
