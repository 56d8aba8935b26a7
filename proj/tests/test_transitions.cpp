#include <cmath>
#include <random>

#include "doctest.h"
#include "mtm/transitions.hpp"
#include "oracles.hpp"

using namespace mtm;

namespace {

// a = 0, b = 1, c = 2
const std::vector<Event> kToy{{1, 2, 1}, {2, 0, 4}, {1, 0, 5}, {0, 2, 7}, {0, 1, 8}, {0, 1, 9}};

MotifCode code(const char* s) { return MotifCode::parse(s); }

void check_against_oracle(const std::vector<Event>& events, Timestamp delta, std::size_t l_max) {
  const TemporalGraph g(events);
  const auto got = extract_profile_traced(g, {delta, l_max});
  const auto want = oracle::extract(events, delta, l_max);
  REQUIRE(got.cold_events == want.cold);
  REQUIRE(got.processes.size() == want.chains.size());
  for (std::size_t i = 0; i < want.chains.size(); ++i) {
    CHECK(got.processes[i].events == want.chains[i].events);
    CHECK(got.processes[i].final_code.to_string() == want.chains[i].code);
    CHECK(static_cast<int>(got.processes[i].end) == static_cast<int>(want.chains[i].end));
  }
  const auto& p = got.profile;
  REQUIRE(p.counts.size() == want.counts.size());
  for (const auto& [key, n] : want.counts) {
    const TransitionKey k{code(key.first.c_str()), code(key.second.c_str())};
    CHECK(p.counts.at(k) == n);
    CHECK(p.delta_t_sums.at(k).sum == static_cast<double>(want.delta_sums.at(key)));
    CHECK(p.delta_t_sums.at(k).count == n);
  }
  REQUIRE(p.stop_counts.size() == want.stops.size());
  for (const auto& [c, n] : want.stops) CHECK(p.stop_counts.at(code(c.c_str())) == n);
  CHECK(p.mu == doctest::Approx(want.mu).epsilon(1e-12));
}

}  // namespace

TEST_CASE("toy stream trace") {
  const auto r = extract_profile_traced(TemporalGraph(kToy), {5, 3});
  REQUIRE(r.processes.size() == 2);
  CHECK(r.cold_events == std::vector<std::size_t>{0, 3});
  CHECK(r.processes[0].events == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.processes[0].final_code == code("011202"));
  CHECK(r.processes[0].end == ProcessEnd::size_limit);
  CHECK(r.processes[1].events == std::vector<std::size_t>{3, 4, 5});
  CHECK(r.processes[1].final_code == code("010202"));
  CHECK(kToy[3].t == 7);
  CHECK(kToy[5].t == 9);

  const auto& p = r.profile;
  CHECK(p.cold_event_count == 2);
  CHECK(cold_event_fraction(p) == doctest::Approx(2.0 / 6.0));
  CHECK(p.counts.at({code("01"), code("0112")}) == 1);
  CHECK(p.counts.at({code("0112"), code("011202")}) == 1);
  CHECK(p.counts.at({code("01"), code("0102")}) == 1);
  CHECK(p.counts.at({code("0102"), code("010202")}) == 1);
  CHECK(p.probs.at(code("01")).at(code("0112")) == doctest::Approx(0.5));
  CHECK(p.delta_t_sums.at({code("01"), code("0112")}).sum == 3.0);
  CHECK(p.rates.at({code("01"), code("0112")}) == doctest::Approx(1.0 / 3.0));
  CHECK(p.mu == doctest::Approx(2.5));
  CHECK(p.t_ce == std::vector<Timestamp>{1, 7});
  CHECK(p.ce_edge_weights == std::vector<std::uint64_t>{1, 1});
  check_against_oracle(kToy, 5, 3);
}

TEST_CASE("single event") {
  const auto p = extract_profile(TemporalGraph({{4, 5, 10}}), {3600, 4});
  CHECK(p.cold_event_count == 1);
  CHECK(p.probs.empty());
  CHECK(p.mu == 1.0);
  CHECK(cold_event_fraction(p) == 1.0);
  CHECK(observed_transition_type_count(p) == 0);
  CHECK(stop_probability(p, MotifCode::single()) == 1.0);
}

TEST_CASE("reply stream with l_max 2") {
  const auto p = extract_profile(TemporalGraph({{0, 1, 1}, {1, 0, 2}}), {10, 2});
  CHECK(observed_transition_type_count(p) == 1);
  CHECK(p.counts.at({code("01"), code("0110")}) == 1);
  CHECK(p.rates.at({code("01"), code("0110")}) == 1.0);
}

TEST_CASE("one event can extend several processes") {
  // Two disjoint cold events, then an event touching both.
  const auto r = extract_profile_traced(TemporalGraph({{0, 1, 1}, {2, 3, 2}, {1, 2, 3}}), {10, 4});
  CHECK(r.cold_events == std::vector<std::size_t>{0, 1});
  CHECK(r.processes[0].events == std::vector<std::size_t>{0, 2});
  CHECK(r.processes[1].events == std::vector<std::size_t>{1, 2});
  CHECK(r.processes[0].final_code == code("0112"));
  CHECK(r.processes[1].final_code == code("0120"));
}

TEST_CASE("ties give zero gaps and the floored rate") {
  const auto p = extract_profile(TemporalGraph({{0, 1, 5}, {0, 1, 5}}), {10, 3});
  const TransitionKey k{code("01"), code("0101")};
  CHECK(p.delta_t_sums.at(k).sum == 0.0);
  CHECK(p.rates.at(k) == 1.0);
}

TEST_CASE("expiry") {
  const auto r = extract_profile_traced(TemporalGraph({{0, 1, 0}, {1, 0, 11}}), {10, 4});
  CHECK(r.cold_events.size() == 2);
  CHECK(r.processes[0].end == ProcessEnd::time_limit);
  CHECK(r.processes[1].end == ProcessEnd::end_of_stream);
  check_against_oracle({{0, 1, 0}, {1, 0, 10}, {1, 0, 21}}, 10, 4);
}

TEST_CASE("argument checks") {
  const TemporalGraph g({{0, 1, 0}});
  CHECK_THROWS(extract_profile(g, {10, 1}));
  CHECK_THROWS(extract_profile(g, {10, 7}));
  CHECK_THROWS(extract_profile(g, {0, 3}));
  CHECK_THROWS(extract_profile(TemporalGraph(), {10, 3}));
}

TEST_CASE("random streams agree with the definition") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto events = oracle::random_stream(rng, n, 2 + static_cast<NodeId>(rng() % 5), 4);
    const Timestamp delta = 1 + static_cast<Timestamp>(rng() % 8);
    const std::size_t l_max = 2 + rng() % 5;
    CAPTURE(trial);
    check_against_oracle(events, delta, l_max);
  }
}

TEST_CASE("profile invariants on random streams") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto events = oracle::random_stream(rng, 5 + rng() % 60, 3 + static_cast<NodeId>(rng() % 10), 6);
    const std::size_t l_max = 2 + rng() % 3;
    const auto r = extract_profile_traced(TemporalGraph(events), {1 + static_cast<Timestamp>(rng() % 20), l_max});
    const auto& p = r.profile;

    // Every event is cold or extends at least one process.
    std::vector<int> seen(events.size(), 0);
    for (const auto& proc : r.processes) {
      for (std::size_t i = 0; i < proc.events.size(); ++i) seen[proc.events[i]] += i == 0 ? 1000 : 1;
    }
    for (int s : seen) CHECK((s == 1000 || (s >= 1 && s < 1000)));

    std::uint64_t stops = 0;
    for (const auto& [c, n] : p.stop_counts) stops += n;
    CHECK(stops == p.cold_event_count);
    CHECK(r.processes.size() == p.cold_event_count);

    for (const auto& [from, row] : p.probs) {
      double total = stop_probability(p, from);
      for (const auto& [to, prob] : row) {
        CHECK(from.is_prefix_of(to));
        CHECK(to.size() == from.size() + 1);
        CHECK(prob >= 0.0);
        total += prob;
      }
      CHECK(std::abs(total - 1.0) <= 1e-9);
    }
    CHECK(observed_transition_type_count(p) <= transition_type_total(l_max));
    CHECK(p.t_ce.size() == p.cold_event_count);
    std::uint64_t in = 0, out = 0, w = 0;
    for (const auto& d : p.k_ce) {
      in += d.in;
      out += d.out;
    }
    for (auto x : p.ce_edge_weights) w += x;
    CHECK(in == out);
    CHECK(out == p.ce_edge_weights.size());
    CHECK(w == p.cold_event_count);
    CHECK(cold_event_fraction(p) >= 1.0 / static_cast<double>(l_max) - 1e-12);
  }
}
