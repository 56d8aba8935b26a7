#include "mtm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace mtm {

namespace {

constexpr int kWholeMatchingAttempts = 64;
constexpr int kStubRedraws = 32;
constexpr int kPartnerRejectionTries = 32;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t uniform_index(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Per-stub redraw matching used when whole-matching rejection keeps failing.
std::vector<StaticEdge> sequential_matching(const std::vector<NodeId>& out_stubs,
                                            std::vector<NodeId> in_stubs, Rng& rng) {
  std::unordered_set<StaticEdge, StaticEdgeHash> seen;
  std::vector<StaticEdge> edges;
  edges.reserve(out_stubs.size());
  for (NodeId src : out_stubs) {
    if (in_stubs.empty()) break;
    std::size_t pick = 0;
    bool placed = false;
    for (int attempt = 0; attempt < kStubRedraws; ++attempt) {
      pick = uniform_index(in_stubs.size(), rng);
      const NodeId dst = in_stubs[pick];
      if (dst != src && !seen.contains({src, dst})) {
        placed = true;
        break;
      }
    }
    if (placed) {
      seen.insert({src, in_stubs[pick]});
      edges.push_back({src, in_stubs[pick]});
    }
    // Placed or discarded, the drawn in-stub is consumed.
    in_stubs[pick] = in_stubs.back();
    in_stubs.pop_back();
  }
  return edges;
}

}  // namespace

Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
}

std::vector<StaticEdge> configuration_model(std::span<const DegreePair> degrees, Rng& rng) {
  std::vector<NodeId> out_stubs;
  std::vector<NodeId> in_stubs;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    out_stubs.insert(out_stubs.end(), degrees[i].out, static_cast<NodeId>(i));
    in_stubs.insert(in_stubs.end(), degrees[i].in, static_cast<NodeId>(i));
  }
  if (out_stubs.size() != in_stubs.size()) {
    throw GenerationError("degree sequence has " + std::to_string(out_stubs.size()) +
                          " out-stubs but " + std::to_string(in_stubs.size()) + " in-stubs");
  }

  std::unordered_set<StaticEdge, StaticEdgeHash> seen;
  for (int attempt = 0; attempt < kWholeMatchingAttempts; ++attempt) {
    std::shuffle(in_stubs.begin(), in_stubs.end(), rng);
    seen.clear();
    bool ok = true;
    for (std::size_t i = 0; i < out_stubs.size() && ok; ++i) {
      ok = out_stubs[i] != in_stubs[i] && seen.insert({out_stubs[i], in_stubs[i]}).second;
    }
    if (ok) {
      std::vector<StaticEdge> edges;
      edges.reserve(out_stubs.size());
      for (std::size_t i = 0; i < out_stubs.size(); ++i) edges.push_back({out_stubs[i], in_stubs[i]});
      return edges;
    }
  }
  return sequential_matching(out_stubs, std::move(in_stubs), rng);
}

std::vector<Event> generate_cold_events(const TransitionProfile& profile, Rng& rng) {
  const std::vector<StaticEdge> edges = configuration_model(profile.k_ce, rng);
  if (profile.t_ce.empty()) return {};
  if (edges.empty()) throw GenerationError("no admissible cold-event edge could be wired");

  std::vector<std::uint64_t> weights = profile.ce_edge_weights;
  std::shuffle(weights.begin(), weights.end(), rng);
  std::vector<std::uint64_t> edge_weight(edges.size(), 0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    // Weights left over by discarded stub pairs land on random edges.
    const std::size_t target = i < edges.size() ? i : uniform_index(edges.size(), rng);
    edge_weight[target] += weights[i];
  }

  std::vector<Timestamp> times = profile.t_ce;
  std::shuffle(times.begin(), times.end(), rng);
  std::vector<Event> events;
  events.reserve(times.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::uint64_t k = 0; k < edge_weight[i] && next < times.size(); ++k) {
      events.push_back({edges[i].src, edges[i].dst, times[next++]});
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  return events;
}

double new_edge_probability(std::uint64_t input_static_edges, std::uint64_t cold_static_edges,
                            std::uint64_t cold_events, double mu) {
  const double denom = (mu - 1.0) * static_cast<double>(cold_events);
  if (!(denom > 0.0)) return 1.0;
  const double numer =
      static_cast<double>(input_static_edges) - static_cast<double>(cold_static_edges);
  return std::clamp(numer / denom, 0.0, 1.0);
}

void OutputState::touch(NodeId node) {
  const auto idx = static_cast<std::size_t>(node);
  if (idx >= known_.size()) {
    known_.resize(idx + 1, 0);
    out_.resize(idx + 1);
    in_.resize(idx + 1);
  }
  if (!known_[idx]) {
    known_[idx] = 1;
    nodes_.push_back(node);
  }
  next_fresh_ = std::max(next_fresh_, node + 1);
}

void OutputState::add_event(NodeId src, NodeId dst) {
  touch(src);
  touch(dst);
  if (has_edge(src, dst)) return;
  out_[static_cast<std::size_t>(src)].push_back(dst);
  in_[static_cast<std::size_t>(dst)].push_back(src);
  ++edge_count_;
}

bool OutputState::has_node(NodeId node) const {
  const auto idx = static_cast<std::size_t>(node);
  return node >= 0 && idx < known_.size() && known_[idx];
}

bool OutputState::has_edge(NodeId src, NodeId dst) const {
  if (!has_node(src) || !has_node(dst)) return false;
  // Scan the shorter adjacency list.
  const auto& outs = out_[static_cast<std::size_t>(src)];
  const auto& ins = in_[static_cast<std::size_t>(dst)];
  if (outs.size() <= ins.size()) return std::find(outs.begin(), outs.end(), dst) != outs.end();
  return std::find(ins.begin(), ins.end(), src) != ins.end();
}

std::span<const NodeId> OutputState::out_neighbors(NodeId node) const {
  if (!has_node(node)) return {};
  return out_[static_cast<std::size_t>(node)];
}

std::span<const NodeId> OutputState::in_neighbors(NodeId node) const {
  if (!has_node(node)) return {};
  return in_[static_cast<std::size_t>(node)];
}

NodeId select_edge_for_new_digit(NodeId fixed, PartnerRole role,
                                 std::span<const NodeId> motif_nodes, OutputState& state,
                                 double p_new, Rng& rng) {
  auto in_motif = [&](NodeId n) {
    return std::find(motif_nodes.begin(), motif_nodes.end(), n) != motif_nodes.end();
  };
  auto edge_exists = [&](NodeId partner) {
    return role == PartnerRole::target ? state.has_edge(fixed, partner)
                                       : state.has_edge(partner, fixed);
  };

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) >= p_new) {
    const auto existing =
        role == PartnerRole::target ? state.out_neighbors(fixed) : state.in_neighbors(fixed);
    std::vector<NodeId> reusable;
    for (NodeId n : existing) {
      if (!in_motif(n)) reusable.push_back(n);
    }
    if (!reusable.empty()) return reusable[uniform_index(reusable.size(), rng)];
  }

  const auto known = state.nodes();
  auto admissible = [&](NodeId n) { return !in_motif(n) && !edge_exists(n); };
  if (!known.empty()) {
    for (int attempt = 0; attempt < kPartnerRejectionTries; ++attempt) {
      const NodeId n = known[uniform_index(known.size(), rng)];
      if (admissible(n)) return n;
    }
    std::vector<NodeId> candidates;
    for (NodeId n : known) {
      if (admissible(n)) candidates.push_back(n);
    }
    if (!candidates.empty()) return candidates[uniform_index(candidates.size(), rng)];
  }
  return state.mint_node();
}

SimulationResult simulate_traced(const TransitionProfile& profile,
                                 std::span<const Event> cold_events,
                                 const GenerationConfig& config) {
  if (config.l_max != profile.params.l_max) {
    throw GenerationError("configured l_max " + std::to_string(config.l_max) +
                          " differs from the profile's " + std::to_string(profile.params.l_max));
  }
  if (config.l_max < 2) throw GenerationError("l_max must be at least 2");

  SimulationResult result;
  result.new_edge_probability =
      new_edge_probability(profile.static_edge_count, static_projection(cold_events).size(),
                           cold_events.size(), profile.mu);
  const double p_new = result.new_edge_probability;

  struct Emitted {
    double t;
    NodeId src;
    NodeId dst;
  };
  std::vector<Emitted> emitted;
  emitted.reserve(cold_events.size() * 2);
  OutputState state;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  result.processes.reserve(cold_events.size());
  for (std::size_t k = 0; k < cold_events.size(); ++k) {
    const Event& cold = cold_events[k];
    Rng rng = derive_rng(config.seed, k + 1);
    SimulatedProcess proc;
    proc.codes.push_back(MotifCode::single());
    proc.nodes = {cold.src, cold.dst};
    proc.events.push_back(cold);
    proc.times.push_back(static_cast<double>(cold.t));
    state.add_event(cold.src, cold.dst);
    emitted.push_back({static_cast<double>(cold.t), cold.src, cold.dst});

    double t = static_cast<double>(cold.t);
    MotifCode code = MotifCode::single();
    while (code.size() < config.l_max) {
      auto row = profile.probs.find(code);
      if (row == profile.probs.end()) break;
      const double draw = unit(rng);
      double cumulative = 0.0;
      const MotifCode* next = nullptr;
      for (const auto& [to, p] : row->second) {
        cumulative += p;
        if (draw < cumulative) {
          next = &to;
          break;
        }
      }
      if (next == nullptr) break;  // stop state

      const DigitPair pair = next->last();
      const std::size_t n = code.node_count();
      NodeId src = 0;
      NodeId dst = 0;
      if (pair.src == n) {
        dst = proc.nodes[pair.dst];
        src = select_edge_for_new_digit(dst, PartnerRole::source, proc.nodes, state, p_new, rng);
        proc.nodes.push_back(src);
      } else if (pair.dst == n) {
        src = proc.nodes[pair.src];
        dst = select_edge_for_new_digit(src, PartnerRole::target, proc.nodes, state, p_new, rng);
        proc.nodes.push_back(dst);
      } else {
        src = proc.nodes[pair.src];
        dst = proc.nodes[pair.dst];
      }

      auto rate = profile.rates.find({code, *next});
      const double gap = rate == profile.rates.end()
                             ? 1.0
                             : std::exponential_distribution<double>(rate->second)(rng);
      t += gap;
      state.add_event(src, dst);
      emitted.push_back({t, src, dst});
      proc.codes.push_back(*next);
      proc.times.push_back(t);
      proc.events.push_back({src, dst, std::llround(t)});
      code = *next;
    }
    result.processes.push_back(std::move(proc));
  }

  std::stable_sort(emitted.begin(), emitted.end(),
                   [](const Emitted& a, const Emitted& b) { return a.t < b.t; });
  std::vector<Event> events;
  events.reserve(emitted.size());
  for (const auto& e : emitted) events.push_back({e.src, e.dst, std::llround(e.t)});
  result.graph = TemporalGraph(std::move(events));
  return result;
}

TemporalGraph simulate(const TransitionProfile& profile, std::span<const Event> cold_events,
                       const GenerationConfig& config) {
  return simulate_traced(profile, cold_events, config).graph;
}

TemporalGraph generate(const TransitionProfile& profile, const GenerationConfig& config) {
  Rng rng = derive_rng(config.seed, 0);
  const std::vector<Event> cold = generate_cold_events(profile, rng);
  return simulate(profile, cold, config);
}

}  // namespace mtm
