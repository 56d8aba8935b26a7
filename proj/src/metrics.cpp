#include "mtm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mtm {

namespace {

// Union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

GlobalStats global_stats(const TemporalGraph& g) {
  if (g.empty()) throw std::invalid_argument("global_stats needs a non-empty graph");
  GlobalStats s;
  s.event_count = g.size();
  s.timespan_seconds = g.timespan();
  s.mean_iet = g.size() > 1 ? static_cast<double>(g.timespan()) / static_cast<double>(g.size() - 1)
                            : 0.0;

  std::unordered_map<NodeId, std::size_t> dense;
  for (const auto& e : g.events()) {
    dense.try_emplace(e.src, dense.size());
    dense.try_emplace(e.dst, dense.size());
  }
  s.node_count = dense.size();

  std::unordered_map<StaticEdge, std::uint64_t, StaticEdgeHash> per_edge;
  for (const auto& e : g.events()) ++per_edge[{e.src, e.dst}];
  s.edge_count = per_edge.size();
  for (const auto& [edge, n] : per_edge) s.max_events_on_edge = std::max(s.max_events_on_edge, n);
  s.mean_degree = 2.0 * static_cast<double>(s.edge_count) / static_cast<double>(s.node_count);

  DisjointSets sets(dense.size());
  for (const auto& [edge, n] : per_edge) sets.unite(dense[edge.src], dense[edge.dst]);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (sets.find(i) == i) {
      ++s.n_components;
      s.lcc_size = std::max<std::uint64_t>(s.lcc_size, sets.size_of(i));
    }
  }
  return s;
}

double stat_value(const GlobalStats& s, std::string_view name) {
  if (name == "edge_count") return static_cast<double>(s.edge_count);
  if (name == "mean_degree") return s.mean_degree;
  if (name == "n_components") return static_cast<double>(s.n_components);
  if (name == "lcc_size") return static_cast<double>(s.lcc_size);
  if (name == "event_count") return static_cast<double>(s.event_count);
  if (name == "timespan") return static_cast<double>(s.timespan_seconds);
  if (name == "mean_iet") return s.mean_iet;
  if (name == "max_events_on_edge") return static_cast<double>(s.max_events_on_edge);
  throw std::invalid_argument("unknown statistic '" + std::string(name) + "'");
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic needs non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    // Step both CDFs past the smallest remaining value.
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

std::optional<double> msre(std::span<const std::uint64_t> synthetic, std::uint64_t original) {
  if (synthetic.empty()) return std::nullopt;
  double sum = 0.0;
  for (std::uint64_t s : synthetic) {
    if (s == 0) return std::nullopt;
    const double rel = (static_cast<double>(s) - static_cast<double>(original)) / static_cast<double>(s);
    sum += rel * rel;
  }
  return sum / static_cast<double>(synthetic.size());
}

DegreeSamples degree_samples(const TemporalGraph& g) {
  std::unordered_map<NodeId, std::size_t> dense;
  for (const auto& e : g.events()) {
    dense.try_emplace(e.src, dense.size());
    dense.try_emplace(e.dst, dense.size());
  }
  DegreeSamples d;
  d.in.assign(dense.size(), 0.0);
  d.out.assign(dense.size(), 0.0);
  for (const auto& edge : static_projection(g)) {
    d.out[dense[edge.src]] += 1.0;
    d.in[dense[edge.dst]] += 1.0;
  }
  return d;
}

std::vector<double> inter_event_times(const TemporalGraph& g) {
  std::vector<double> gaps;
  if (g.size() < 2) return gaps;
  gaps.reserve(g.size() - 1);
  for (std::size_t i = 1; i < g.size(); ++i) gaps.push_back(static_cast<double>(g[i].t - g[i - 1].t));
  return gaps;
}

std::vector<double> relative_timestamps(const TemporalGraph& g) {
  std::vector<double> ts;
  ts.reserve(g.size());
  if (g.empty()) return ts;
  const Timestamp t0 = g[0].t;
  for (const auto& e : g.events()) ts.push_back(static_cast<double>(e.t - t0));
  return ts;
}

std::vector<std::uint64_t> window_motif_totals(const TemporalGraph& g, Timestamp start,
                                               Timestamp span, std::size_t windows,
                                               std::span<const std::size_t> sizes,
                                               Timestamp delta_c, const CountOptions& options) {
  if (windows == 0) throw std::invalid_argument("window count must be positive");
  std::vector<std::vector<Event>> slices(windows);
  for (const auto& e : g.events()) {
    std::size_t k = 0;
    if (span > 0) {
      const double pos = static_cast<double>(e.t - start) * static_cast<double>(windows) /
                         static_cast<double>(span);
      k = pos <= 0.0 ? 0 : std::min(windows - 1, static_cast<std::size_t>(pos));
    }
    slices[k].push_back(e);
  }
  std::vector<std::uint64_t> totals(windows, 0);
  for (std::size_t k = 0; k < windows; ++k) {
    if (slices[k].size() < 2) continue;
    const TemporalGraph slice(std::move(slices[k]));
    for (const auto& sc : count_motifs(slice, sizes, delta_c, options)) totals[k] += sc.total;
  }
  return totals;
}

CompareReport compare_report(const TemporalGraph& original,
                             std::span<const TemporalGraph> synthetics,
                             const CompareOptions& options) {
  if (synthetics.empty()) throw std::invalid_argument("compare_report needs at least one synthetic graph");
  CompareReport report;
  report.synthetic_count = synthetics.size();
  report.delta_c = options.delta_c;
  const double r = static_cast<double>(synthetics.size());

  const GlobalStats base = global_stats(original);
  std::vector<GlobalStats> syn;
  syn.reserve(synthetics.size());
  for (const auto& g : synthetics) syn.push_back(global_stats(g));
  for (const char* name : kGlobalStatNames) {
    StatComparison c;
    c.original = stat_value(base, name);
    for (const auto& s : syn) c.synthetic_mean += stat_value(s, name) / r;
    if (c.original != 0.0) {
      c.ratio = c.synthetic_mean / c.original;
    } else if (c.synthetic_mean == 0.0) {
      c.ratio = 1.0;
    }
    report.global[name] = c;
  }

  const DegreeSamples deg = degree_samples(original);
  const std::vector<double> iet = inter_event_times(original);
  const std::vector<double> ts = relative_timestamps(original);
  for (const auto& g : synthetics) {
    const DegreeSamples d = degree_samples(g);
    report.ks_in_degree += ks_statistic(deg.in, d.in) / r;
    report.ks_out_degree += ks_statistic(deg.out, d.out) / r;
    const std::vector<double> g_iet = inter_event_times(g);
    if (!iet.empty() && !g_iet.empty()) report.ks_iet += ks_statistic(iet, g_iet) / r;
    report.ks_timestamp += ks_statistic(ts, relative_timestamps(g)) / r;
  }

  if (!options.sizes.empty()) {
    const auto base_counts = count_motifs(original, options.sizes, options.delta_c, options.count);
    std::vector<std::vector<SpectrumCounts>> syn_counts;
    syn_counts.reserve(synthetics.size());
    for (const auto& g : synthetics) {
      syn_counts.push_back(count_motifs(g, options.sizes, options.delta_c, options.count));
    }
    for (std::size_t k = 0; k < options.sizes.size(); ++k) {
      MotifComparison m;
      m.l = options.sizes[k];
      m.original_total = base_counts[k].total;
      for (const auto& sc : syn_counts) m.synthetic_totals.push_back(sc[k].total);
      m.total_msre = msre(m.synthetic_totals, m.original_total);

      std::map<MotifCode, bool> codes;
      for (const auto& [code, n] : base_counts[k].counts) codes[code] = true;
      for (const auto& sc : syn_counts) {
        for (const auto& [code, n] : sc[k].counts) codes[code] = true;
      }
      for (const auto& [code, unused] : codes) {
        std::vector<std::uint64_t> per_run;
        per_run.reserve(syn_counts.size());
        for (const auto& sc : syn_counts) per_run.push_back(sc[k].count(code));
        m.per_code_msre[code] = msre(per_run, base_counts[k].count(code));
      }
      report.motifs.push_back(std::move(m));
    }

    if (options.window_count > 0) {
      const Timestamp start = original[0].t;
      const Timestamp span = original.timespan();
      report.window_original = window_motif_totals(original, start, span, options.window_count,
                                                   options.sizes, options.delta_c, options.count);
      report.window_synthetic_mean.assign(options.window_count, 0.0);
      for (const auto& g : synthetics) {
        const auto w = window_motif_totals(g, start, span, options.window_count, options.sizes,
                                           options.delta_c, options.count);
        for (std::size_t k = 0; k < w.size(); ++k) {
          report.window_synthetic_mean[k] += static_cast<double>(w[k]) / r;
        }
      }
    }
  }
  return report;
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string optional_csv(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream s;
  s << std::setprecision(10) << *v;
  return s.str();
}

}  // namespace

nlohmann::json stats_to_json(const GlobalStats& s) {
  return {{"edge_count", s.edge_count},
          {"mean_degree", s.mean_degree},
          {"n_components", s.n_components},
          {"lcc_size", s.lcc_size},
          {"event_count", s.event_count},
          {"timespan", s.timespan_seconds},
          {"mean_iet", s.mean_iet},
          {"max_events_on_edge", s.max_events_on_edge},
          {"node_count", s.node_count}};
}

nlohmann::json report_to_json(const CompareReport& report) {
  using nlohmann::json;
  json doc;
  doc["synthetic_count"] = report.synthetic_count;
  doc["delta_c"] = report.delta_c;
  json global = json::object();
  for (const auto& [name, c] : report.global) {
    global[name] = {{"original", c.original},
                    {"synthetic_mean", c.synthetic_mean},
                    {"ratio", optional_json(c.ratio)}};
  }
  doc["global"] = std::move(global);
  doc["ks"] = {{"in_degree", report.ks_in_degree},
               {"out_degree", report.ks_out_degree},
               {"iet", report.ks_iet},
               {"timestamp", report.ks_timestamp}};
  json motifs = json::object();
  for (const auto& m : report.motifs) {
    json per_code = json::object();
    for (const auto& [code, v] : m.per_code_msre) per_code[code.to_string()] = optional_json(v);
    motifs[std::to_string(m.l)] = {{"original_total", m.original_total},
                                   {"synthetic_totals", m.synthetic_totals},
                                   {"msre_total", optional_json(m.total_msre)},
                                   {"msre_per_code", std::move(per_code)}};
  }
  doc["motifs"] = std::move(motifs);
  doc["windows"] = {{"count", report.window_original.size()},
                    {"original", report.window_original},
                    {"synthetic_mean", report.window_synthetic_mean}};
  return doc;
}

std::map<std::string, std::string> report_to_csv(const CompareReport& report) {
  std::map<std::string, std::string> tables;
  {
    std::ostringstream s;
    s << std::setprecision(10) << "metric,original,synthetic_mean,ratio\n";
    for (const char* name : kGlobalStatNames) {
      const auto& c = report.global.at(name);
      s << name << ',' << c.original << ',' << c.synthetic_mean << ',' << optional_csv(c.ratio)
        << '\n';
    }
    tables["ratios"] = s.str();
  }
  {
    std::ostringstream s;
    s << std::setprecision(10) << "distribution,ks\n"
      << "in_degree," << report.ks_in_degree << "\nout_degree," << report.ks_out_degree
      << "\niet," << report.ks_iet << "\ntimestamp," << report.ks_timestamp << '\n';
    tables["ks"] = s.str();
  }
  {
    std::ostringstream s;
    s << "l,code,msre\n";
    for (const auto& m : report.motifs) {
      s << m.l << ",total," << optional_csv(m.total_msre) << '\n';
      for (const auto& [code, v] : m.per_code_msre) {
        s << m.l << ',' << code.to_string() << ',' << optional_csv(v) << '\n';
      }
    }
    tables["msre"] = s.str();
  }
  {
    std::ostringstream s;
    s << std::setprecision(10) << "window,original,synthetic_mean\n";
    for (std::size_t k = 0; k < report.window_original.size(); ++k) {
      s << k << ',' << report.window_original[k] << ',' << report.window_synthetic_mean[k] << '\n';
    }
    tables["windows"] = s.str();
  }
  return tables;
}

std::string report_summary(const CompareReport& report) {
  std::ostringstream s;
  s << std::left << std::setw(20) << "metric" << std::right << std::setw(16) << "original"
    << std::setw(16) << "synthetic" << std::setw(10) << "ratio" << '\n';
  s << std::fixed;
  for (const char* name : kGlobalStatNames) {
    const auto& c = report.global.at(name);
    s << std::left << std::setw(20) << name << std::right << std::setprecision(2) << std::setw(16)
      << c.original << std::setw(16) << c.synthetic_mean << std::setw(10) << std::setprecision(3);
    if (c.ratio) {
      s << *c.ratio;
    } else {
      s << "n/a";
    }
    s << '\n';
  }
  s << std::setprecision(3) << "KS  in-degree " << report.ks_in_degree << "  out-degree "
    << report.ks_out_degree << "  IET " << report.ks_iet << "  timestamp " << report.ks_timestamp
    << '\n';
  for (const auto& m : report.motifs) {
    s << "MSRE " << m.l << "-event total: ";
    if (m.total_msre) {
      s << std::setprecision(4) << *m.total_msre;
    } else {
      s << "undefined";
    }
    s << "  (original " << m.original_total << ")\n";
  }
  return s.str();
}

}  // namespace mtm
