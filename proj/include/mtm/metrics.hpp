#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtm/io.hpp"
#include "mtm/motif_code.hpp"
#include "mtm/motif_counter.hpp"

namespace mtm {

/// Graph-level statistics. Structural fields refer to the static projection;
/// components are weakly connected.
struct GlobalStats {
  std::uint64_t edge_count = 0;
  double mean_degree = 0.0;  // mean over nodes of in + out degree
  std::uint64_t n_components = 0;
  std::uint64_t lcc_size = 0;
  std::uint64_t event_count = 0;
  Timestamp timespan_seconds = 0;
  double mean_iet = 0.0;  // mean gap between consecutive events
  std::uint64_t max_events_on_edge = 0;
  std::uint64_t node_count = 0;
};

/// Names of the eight compared statistics, in report order.
inline constexpr const char* kGlobalStatNames[] = {
    "edge_count", "mean_degree", "n_components", "lcc_size",
    "event_count", "timespan", "mean_iet", "max_events_on_edge"};

/// Throws std::invalid_argument on an empty graph.
GlobalStats global_stats(const TemporalGraph& g);

/// Value of one of kGlobalStatNames.
double stat_value(const GlobalStats& s, std::string_view name);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
/// Throws std::invalid_argument if either sample is empty.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Mean squared relative error of synthetic counts against the original,
/// relative to each synthetic count. nullopt if any synthetic count is 0 or
/// the list is empty.
std::optional<double> msre(std::span<const std::uint64_t> synthetic, std::uint64_t original);

/// Per-node in-degrees and out-degrees of the static projection.
struct DegreeSamples {
  std::vector<double> in;
  std::vector<double> out;
};
DegreeSamples degree_samples(const TemporalGraph& g);

/// Gaps between consecutive events in graph order.
std::vector<double> inter_event_times(const TemporalGraph& g);

/// Timestamps shifted so the first event is at 0.
std::vector<double> relative_timestamps(const TemporalGraph& g);

/// Total motif counts per equal-duration window of [start, start + span].
/// Window k holds the events with floor((t - start) * windows / span) == k,
/// clamped to the first/last window; motifs are counted inside each window.
std::vector<std::uint64_t> window_motif_totals(const TemporalGraph& g, Timestamp start,
                                               Timestamp span, std::size_t windows,
                                               std::span<const std::size_t> sizes,
                                               Timestamp delta_c, const CountOptions& options = {});

struct CompareOptions {
  Timestamp delta_c = 3600;
  std::vector<std::size_t> sizes{2, 3, 4};
  std::size_t window_count = 10;
  CountOptions count;
};

struct StatComparison {
  double original = 0.0;
  double synthetic_mean = 0.0;
  std::optional<double> ratio;  // synthetic_mean / original; nullopt if original is 0
};

struct MotifComparison {
  std::size_t l = 0;
  std::uint64_t original_total = 0;
  std::vector<std::uint64_t> synthetic_totals;
  std::optional<double> total_msre;
  std::map<MotifCode, std::optional<double>> per_code_msre;
};

struct CompareReport {
  std::map<std::string, StatComparison> global;  // keyed by kGlobalStatNames
  // Mean over synthetics of KS(original, synthetic).
  double ks_in_degree = 0.0;
  double ks_out_degree = 0.0;
  double ks_iet = 0.0;
  double ks_timestamp = 0.0;
  std::vector<MotifComparison> motifs;  // one per requested size
  std::vector<std::uint64_t> window_original;
  std::vector<double> window_synthetic_mean;
  std::size_t synthetic_count = 0;
  Timestamp delta_c = 0;
};

/// Throws std::invalid_argument if `synthetics` is empty.
CompareReport compare_report(const TemporalGraph& original,
                             std::span<const TemporalGraph> synthetics,
                             const CompareOptions& options);

nlohmann::json report_to_json(const CompareReport& report);

/// CSV tables: "ratios", "ks", "msre", "windows".
std::map<std::string, std::string> report_to_csv(const CompareReport& report);

/// Fixed-width summary table for terminals.
std::string report_summary(const CompareReport& report);

nlohmann::json stats_to_json(const GlobalStats& s);

}  // namespace mtm
