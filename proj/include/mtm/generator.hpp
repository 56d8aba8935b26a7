#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "mtm/io.hpp"
#include "mtm/motif_code.hpp"
#include "mtm/transitions.hpp"

namespace mtm {

using Rng = std::mt19937_64;

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerationConfig {
  std::uint64_t seed = 1;
  std::size_t l_max = 4;  // must equal the profile's l_max
};

/// Independent generator for stream `stream` of a run seeded with `seed`.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream);

/// Random directed simple graph with the given (in, out) degree sequence.
/// Node i of the result is entry i of `degrees`. A uniform stub matching is
/// redrawn until it has no self-loop or repeated pair; when that keeps
/// failing, stubs are matched one at a time with bounded redraws and a stub
/// pair that cannot be placed is discarded.
std::vector<StaticEdge> configuration_model(std::span<const DegreePair> degrees, Rng& rng);

/// Cold events for the output: configuration-model wiring from k_ce, each
/// edge given one of ce_edge_weights (without replacement), and t_ce spread
/// over the edges according to their weights. Sorted by time. The multiset of
/// timestamps equals t_ce.
std::vector<Event> generate_cold_events(const TransitionProfile& profile, Rng& rng);

/// Probability that a transition needing a new edge creates one instead of
/// reusing an existing edge: (|E| - |CE'_static|) / ((mu - 1) |CE'|),
/// clamped to [0, 1]; 1 when the denominator is not positive.
double new_edge_probability(std::uint64_t input_static_edges, std::uint64_t cold_static_edges,
                            std::uint64_t cold_events, double mu);

/// Static projection and node universe of everything emitted so far.
class OutputState {
 public:
  void add_event(NodeId src, NodeId dst);
  bool has_edge(NodeId src, NodeId dst) const;
  bool has_node(NodeId node) const;

  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::span<const NodeId> out_neighbors(NodeId node) const;
  std::span<const NodeId> in_neighbors(NodeId node) const;
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// An id not used by any node seen so far.
  NodeId mint_node() noexcept { return next_fresh_++; }

 private:
  void touch(NodeId node);

  std::vector<NodeId> nodes_;
  std::vector<char> known_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::size_t edge_count_ = 0;
  NodeId next_fresh_ = 0;
};

enum class PartnerRole { target, source };

/// Picks the node for a motif digit that is new to the process. The event is
/// (fixed -> partner) for PartnerRole::target, (partner -> fixed) for
/// PartnerRole::source. With probability `p_new` (or when nothing can be
/// reused) the pair is a new static edge with a partner drawn uniformly from
/// known nodes outside `motif_nodes`, or a freshly minted node if none
/// qualifies; otherwise an existing edge at `fixed` in the required
/// direction whose other endpoint is outside the motif is reused.
NodeId select_edge_for_new_digit(NodeId fixed, PartnerRole role,
                                 std::span<const NodeId> motif_nodes, OutputState& state,
                                 double p_new, Rng& rng);

/// One simulated transition process, for inspection.
struct SimulatedProcess {
  std::vector<MotifCode> codes;       // 01 first
  std::vector<NodeId> nodes;          // indexed by digit
  std::vector<Event> events;          // timestamps rounded
  std::vector<double> times;          // unrounded timestamps
};

struct SimulationResult {
  TemporalGraph graph;
  std::vector<SimulatedProcess> processes;  // in cold-event order
  double new_edge_probability = 1.0;
};

/// Grows each cold event into a transition process by sampling the profile
/// rows and exponential transition times. Returns cold plus hot events,
/// time-sorted, with timestamps rounded to whole seconds.
SimulationResult simulate_traced(const TransitionProfile& profile,
                                 std::span<const Event> cold_events,
                                 const GenerationConfig& config);
TemporalGraph simulate(const TransitionProfile& profile, std::span<const Event> cold_events,
                       const GenerationConfig& config);

/// generate_cold_events followed by simulate. Deterministic in (profile, seed).
TemporalGraph generate(const TransitionProfile& profile, const GenerationConfig& config);

}  // namespace mtm
