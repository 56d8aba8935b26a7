#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mtm/metrics.hpp"
#include "oracles.hpp"

using namespace mtm;

namespace {

// sup |F_a - F_b| evaluated directly at every sample point.
double ks_direct(const std::vector<double>& a, const std::vector<double>& b) {
  auto cdf = [](const std::vector<double>& s, double x) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [x](double v) { return v <= x; })) /
           static_cast<double>(s.size());
  };
  double d = 0.0;
  for (const auto* s : {&a, &b}) {
    for (double x : *s) d = std::max(d, std::abs(cdf(a, x) - cdf(b, x)));
  }
  return d;
}

}  // namespace

TEST_CASE("global stats of a reply pair") {
  const auto s = global_stats(TemporalGraph({{1, 2, 0}, {2, 1, 5}}));
  CHECK(s.edge_count == 2);
  CHECK(s.event_count == 2);
  CHECK(s.timespan_seconds == 5);
  CHECK(s.mean_iet == 5.0);
  CHECK(s.max_events_on_edge == 1);
  CHECK(s.n_components == 1);
  CHECK(s.lcc_size == 2);
  CHECK(s.mean_degree == 2.0);
}

TEST_CASE("components") {
  const auto s = global_stats(TemporalGraph({{1, 2, 0}, {3, 4, 1}, {3, 4, 2}}));
  CHECK(s.n_components == 2);
  CHECK(s.lcc_size == 2);
  CHECK(s.max_events_on_edge == 2);
  const auto w = global_stats(TemporalGraph({{1, 2, 0}, {3, 2, 1}, {3, 4, 2}, {7, 8, 3}}));
  CHECK(w.n_components == 2);
  CHECK(w.lcc_size == 4);
  CHECK_THROWS(global_stats(TemporalGraph()));
  CHECK_THROWS(stat_value(w, "nope"));
}

TEST_CASE("ks examples") {
  const std::vector<double> a{1, 2, 3, 4};
  CHECK(ks_statistic(a, a) == 0.0);
  CHECK(ks_statistic(std::vector<double>{0, 0, 0}, std::vector<double>{1, 1, 1}) == 1.0);
  CHECK(ks_statistic(a, std::vector<double>{3, 4, 5, 6}) == doctest::Approx(0.5));
  CHECK_THROWS(ks_statistic(a, std::vector<double>{}));
}

TEST_CASE("ks agrees with direct evaluation and is symmetric") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> v(0, 8);
    std::vector<double> a(1 + rng() % 20);
    std::vector<double> b(1 + rng() % 20);
    for (auto& x : a) x = v(rng);
    for (auto& x : b) x = v(rng) + (trial % 3);
    const double d = ks_statistic(a, b);
    CHECK(d == doctest::Approx(ks_direct(a, b)));
    CHECK(d == ks_statistic(b, a));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("msre") {
  CHECK(*msre(std::vector<std::uint64_t>{100, 100}, 100) == 0.0);
  CHECK(*msre(std::vector<std::uint64_t>{200}, 100) == doctest::Approx(0.25));
  CHECK(*msre(std::vector<std::uint64_t>{50, 200}, 100) == doctest::Approx(0.625));
  CHECK(*msre(std::vector<std::uint64_t>{200, 50}, 100) == doctest::Approx(0.625));
  CHECK_FALSE(msre(std::vector<std::uint64_t>{0, 5}, 100).has_value());
  CHECK_FALSE(msre(std::vector<std::uint64_t>{}, 100).has_value());
}

TEST_CASE("round trip keeps statistics") {
  std::mt19937_64 rng(71);
  const TemporalGraph g(oracle::random_stream(rng, 500, 40, 20));
  const auto a = global_stats(g);
  const auto b = global_stats(parse_events(write_events(g)).graph);
  for (const char* name : kGlobalStatNames) CHECK(stat_value(a, name) == stat_value(b, name));
}

TEST_CASE("samples") {
  const TemporalGraph g({{1, 2, 10}, {1, 2, 12}, {2, 3, 15}});
  CHECK(inter_event_times(g) == std::vector<double>{2, 3});
  CHECK(relative_timestamps(g) == std::vector<double>{0, 2, 5});
  const auto d = degree_samples(g);
  std::vector<double> in = d.in;
  std::vector<double> out = d.out;
  std::sort(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  CHECK(in == std::vector<double>{0, 1, 1});
  CHECK(out == std::vector<double>{0, 1, 1});
}

TEST_CASE("windows") {
  const TemporalGraph g({{1, 2, 0}, {2, 1, 1}, {1, 2, 2}});
  const std::size_t sizes[] = {2};
  const auto w = window_motif_totals(g, 0, 100, 4, sizes, 10);
  CHECK(w == std::vector<std::uint64_t>{3, 0, 0, 0});
  // Events past the span land in the last window.
  const auto late = window_motif_totals(TemporalGraph({{1, 2, 500}, {2, 1, 501}}), 0, 100, 4, sizes, 10);
  CHECK(late == std::vector<std::uint64_t>{0, 0, 0, 1});
  CHECK_THROWS(window_motif_totals(g, 0, 100, 0, sizes, 10));
}

TEST_CASE("self comparison") {
  std::mt19937_64 rng(73);
  const TemporalGraph g(oracle::random_stream(rng, 800, 60, 30));
  const std::vector<TemporalGraph> syn{g, g};
  CompareOptions opts;
  opts.delta_c = 60;
  const auto r = compare_report(g, syn, opts);
  CHECK(r.global.size() == 8);
  for (const auto& [name, c] : r.global) CHECK(*c.ratio == doctest::Approx(1.0));
  CHECK(r.ks_in_degree == 0.0);
  CHECK(r.ks_out_degree == 0.0);
  CHECK(r.ks_iet == 0.0);
  CHECK(r.ks_timestamp == 0.0);
  REQUIRE(r.motifs.size() == 3);
  for (const auto& m : r.motifs) {
    CHECK(*m.total_msre == 0.0);
    for (const auto& [code, v] : m.per_code_msre) CHECK(*v == 0.0);
  }
  CHECK(r.window_original.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(r.window_synthetic_mean[k] == static_cast<double>(r.window_original[k]));
  }
  const auto doc = report_to_json(r);
  CHECK(doc["ks"].size() == 4);
  CHECK(doc["global"].size() == 8);
  CHECK(doc["motifs"]["2"]["msre_total"] == 0.0);
  const auto csv = report_to_csv(r);
  CHECK(csv.size() == 4);
  CHECK(csv.at("ratios").rfind("metric,original,synthetic_mean,ratio\n", 0) == 0);
  CHECK(report_summary(r).find("mean_iet") != std::string::npos);
  CHECK_THROWS(compare_report(g, std::vector<TemporalGraph>{}, opts));
}

TEST_CASE("CollegeMsg statistics") {
  const auto g = read_events_file(std::string(MTM_DATA_DIR) + "/CollegeMsg.txt").graph;
  const auto s = global_stats(g);
  CHECK(s.event_count == 59835);
  CHECK(s.edge_count == 20296);
  CHECK(static_cast<double>(s.timespan_seconds) / 86400.0 == doctest::Approx(193.7).epsilon(0.01));
  CHECK(s.mean_iet == doctest::Approx(273.1).epsilon(0.05));
}
