#include "mtm/transitions.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "mtm/kernels.hpp"

namespace mtm {

namespace {

struct TransitionKeyHash {
  std::size_t operator()(const TransitionKey& k) const noexcept {
    return k.from.hash() * 31 + k.to.hash();
  }
};

// Active transition processes as parallel arrays; slots/last_time/sizes feed
// the scan kernel directly.
class ActiveProcesses {
 public:
  std::size_t size() const noexcept { return sizes_.size(); }

  kernels::ActiveSet view() const noexcept { return {slots_, last_time_, sizes_}; }

  void push(NodeId u, NodeId v, Timestamp t, std::size_t trace_id) {
    const std::size_t base = slots_.size();
    slots_.resize(base + kernels::kSlotWidth, kernels::kEmptySlot);
    slots_[base] = u;
    slots_[base + 1] = v;
    last_time_.push_back(t);
    sizes_.push_back(1);
    codes_.push_back(MotifCode::single());
    trace_ids_.push_back(trace_id);
  }

  const MotifCode& code(std::size_t i) const noexcept { return codes_[i]; }
  Timestamp last_time(std::size_t i) const noexcept { return last_time_[i]; }
  std::size_t trace_id(std::size_t i) const noexcept { return trace_ids_[i]; }

  std::uint8_t digit_of(std::size_t i, NodeId node) const noexcept {
    const NodeId* s = slots_.data() + i * kernels::kSlotWidth;
    const std::size_t n = codes_[i].node_count();
    for (std::size_t d = 0; d < n; ++d) {
      if (s[d] == node) return static_cast<std::uint8_t>(d);
    }
    return static_cast<std::uint8_t>(n);
  }

  /// Appends event (u, v, t); returns the new code.
  const MotifCode& extend(std::size_t i, NodeId u, NodeId v, Timestamp t) {
    const std::uint8_t du = digit_of(i, u);
    const std::uint8_t dv = digit_of(i, v);
    const std::size_t n = codes_[i].node_count();
    NodeId* s = slots_.data() + i * kernels::kSlotWidth;
    if (du == n) s[n] = u;
    if (dv == n) s[n] = v;
    codes_[i] = codes_[i].extend(du, dv);
    last_time_[i] = t;
    ++sizes_[i];
    return codes_[i];
  }

  /// Drops every process whose action is kRetire, keeping relative order.
  /// `actions` covers every process.
  void compact(std::span<const std::uint8_t> actions) {
    std::size_t w = 0;
    for (std::size_t r = 0; r < actions.size(); ++r) {
      if (actions[r] == kernels::kRetire) continue;
      if (w != r) {
        std::copy_n(slots_.begin() + r * kernels::kSlotWidth, kernels::kSlotWidth,
                    slots_.begin() + w * kernels::kSlotWidth);
        last_time_[w] = last_time_[r];
        sizes_[w] = sizes_[r];
        codes_[w] = codes_[r];
        trace_ids_[w] = trace_ids_[r];
      }
      ++w;
    }
    slots_.resize(w * kernels::kSlotWidth);
    last_time_.resize(w);
    sizes_.resize(w);
    codes_.resize(w);
    trace_ids_.resize(w);
  }

 private:
  std::vector<NodeId> slots_;
  std::vector<Timestamp> last_time_;
  std::vector<std::uint8_t> sizes_;
  std::vector<MotifCode> codes_;
  std::vector<std::size_t> trace_ids_;
};

}  // namespace

double stop_probability(const TransitionProfile& profile, const MotifCode& from) {
  auto it = profile.probs.find(from);
  if (it == profile.probs.end()) return 1.0;
  double total = 0.0;
  for (const auto& [to, p] : it->second) total += p;
  return std::clamp(1.0 - total, 0.0, 1.0);
}

void derive_probabilities_and_rates(TransitionProfile& profile) {
  std::map<MotifCode, std::uint64_t> outgoing;
  for (const auto& [key, count] : profile.counts) outgoing[key.from] += count;

  profile.probs.clear();
  for (const auto& [key, count] : profile.counts) {
    auto stops = profile.stop_counts.find(key.from);
    const std::uint64_t denom =
        outgoing[key.from] + (stops == profile.stop_counts.end() ? 0 : stops->second);
    profile.probs[key.from][key.to] = static_cast<double>(count) / static_cast<double>(denom);
  }

  profile.rates.clear();
  for (const auto& [key, dt] : profile.delta_t_sums) {
    if (dt.count == 0) continue;
    profile.rates[key] = 1.0 / std::max(dt.mean(), 1.0);
  }
}

ExtractionResult extract_profile_traced(const TemporalGraph& g, const ExtractionParams& params) {
  if (params.l_max < 2 || params.l_max > MotifCode::kMaxEvents) {
    throw std::invalid_argument("l_max must be in [2, " +
                                std::to_string(MotifCode::kMaxEvents) + "]");
  }
  if (params.delta <= 0) throw std::invalid_argument("delta must be positive");
  if (g.empty()) throw std::invalid_argument("cannot extract transitions from an empty graph");

  ExtractionResult result;
  TransitionProfile& profile = result.profile;
  profile.params = params;
  profile.event_count = g.size();
  profile.node_count = g.node_count();
  profile.static_edge_count = static_projection(g).size();

  std::unordered_map<TransitionKey, std::uint64_t, TransitionKeyHash> counts;
  std::unordered_map<TransitionKey, DeltaSum, TransitionKeyHash> dt_sums;
  std::unordered_map<MotifCode, std::uint64_t, MotifCodeHash> stops;
  std::uint64_t final_edge_sum = 0;

  ActiveProcesses active;
  std::vector<std::uint8_t> actions;

  auto retire = [&](std::size_t i, ProcessEnd why) {
    const MotifCode& code = active.code(i);
    ++stops[code];
    final_edge_sum += code.static_edge_count();
    ProcessTrace& trace = result.processes[active.trace_id(i)];
    trace.final_code = code;
    trace.end = why;
  };

  const auto l_max = static_cast<std::uint8_t>(params.l_max);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const Event& e = g[idx];
    const std::size_t n = active.size();
    actions.resize(n);
    kernels::active_scan(active.view(), {e.src, e.dst, e.t, params.delta, l_max}, actions);

    bool cold = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (actions[i] == kernels::kRetire) {
        retire(i, active.code(i).size() >= params.l_max ? ProcessEnd::size_limit
                                                         : ProcessEnd::time_limit);
      } else if (actions[i] == kernels::kExtend) {
        const MotifCode from = active.code(i);
        const Timestamp gap = e.t - active.last_time(i);
        const MotifCode& to = active.extend(i, e.src, e.dst, e.t);
        TransitionKey key{from, to};
        ++counts[key];
        auto& dt = dt_sums[key];
        dt.sum += static_cast<double>(gap);
        ++dt.count;
        result.processes[active.trace_id(i)].events.push_back(idx);
        cold = false;
      }
    }
    active.compact(actions);

    if (cold) {
      result.cold_events.push_back(idx);
      result.processes.push_back({idx, {idx}, MotifCode::single(), ProcessEnd::end_of_stream});
      active.push(e.src, e.dst, e.t, result.processes.size() - 1);
    }
  }
  for (std::size_t i = 0; i < active.size(); ++i) retire(i, ProcessEnd::end_of_stream);

  profile.counts.insert(counts.begin(), counts.end());
  profile.delta_t_sums.insert(dt_sums.begin(), dt_sums.end());
  profile.stop_counts.insert(stops.begin(), stops.end());
  profile.cold_event_count = result.cold_events.size();
  profile.mu = static_cast<double>(final_edge_sum) / static_cast<double>(result.processes.size());
  derive_probabilities_and_rates(profile);

  // Cold-event degree list, timestamps and per-edge weights.
  std::map<NodeId, DegreePair> degrees;
  std::map<StaticEdge, std::uint64_t> edge_weights;
  profile.t_ce.reserve(result.cold_events.size());
  for (std::size_t idx : result.cold_events) {
    const Event& e = g[idx];
    profile.t_ce.push_back(e.t);
    if (edge_weights[{e.src, e.dst}]++ == 0) {
      ++degrees[e.src].out;
      ++degrees[e.dst].in;
    }
  }
  profile.k_ce.reserve(degrees.size());
  for (const auto& [node, d] : degrees) profile.k_ce.push_back(d);
  profile.ce_edge_weights.reserve(edge_weights.size());
  for (const auto& [edge, w] : edge_weights) profile.ce_edge_weights.push_back(w);
  std::sort(profile.ce_edge_weights.begin(), profile.ce_edge_weights.end(), std::greater<>());

  return result;
}

TransitionProfile extract_profile(const TemporalGraph& g, const ExtractionParams& params) {
  return extract_profile_traced(g, params).profile;
}

double cold_event_fraction(const TransitionProfile& profile) {
  if (profile.event_count == 0) return 0.0;
  return static_cast<double>(profile.cold_event_count) / static_cast<double>(profile.event_count);
}

std::size_t observed_transition_type_count(const TransitionProfile& profile) {
  std::size_t n = 0;
  for (const auto& [key, count] : profile.counts) n += count > 0 ? 1 : 0;
  return n;
}

}  // namespace mtm
