#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mtm/motif_counter.hpp"
#include "oracles.hpp"

using namespace mtm;

namespace {

std::map<std::string, std::uint64_t> as_strings(const SpectrumCounts& sc) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [c, n] : sc.counts) out[c.to_string()] = n;
  return out;
}

}  // namespace

TEST_CASE("examples") {
  const TemporalGraph reply({{0, 1, 1}, {1, 0, 2}});
  CHECK(as_strings(count_motifs(reply, 2, 10)) == std::map<std::string, std::uint64_t>{{"0110", 1}});
  const TemporalGraph late({{0, 1, 1}, {1, 0, 20}});
  CHECK(count_motifs(late, 2, 10).counts.empty());
  CHECK(count_motifs(late, 2, 10).total == 0);
}

TEST_CASE("window bounds") {
  const TemporalGraph g({{0, 1, 0}, {1, 0, 10}});
  CHECK(count_motifs(g, 2, 10).total == 1);
  CHECK(count_motifs(g, 2, 10, {false, 1}).total == 0);
  CHECK(count_motifs(g, 2, 11, {false, 1}).total == 1);
}

TEST_CASE("equal timestamps count in graph order") {
  const TemporalGraph g({{0, 1, 5}, {1, 2, 5}});
  CHECK(as_strings(count_motifs(g, 2, 10)) == std::map<std::string, std::uint64_t>{{"0112", 1}});
}

TEST_CASE("argument checks") {
  const TemporalGraph g({{0, 1, 0}});
  CHECK_THROWS(count_motifs(g, 1, 10));
  CHECK_THROWS(count_motifs(g, 5, 10));
  CHECK_THROWS(count_motifs(g, 2, 0));
  CHECK(count_motifs(TemporalGraph(), 3, 10).total == 0);
}

TEST_CASE("exhaustive subsets") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const auto events = oracle::random_stream(rng, 1 + rng() % 12, 2 + static_cast<NodeId>(rng() % 5), 4,
                                              trial % 10 == 0);
    const TemporalGraph g(events);
    const Timestamp dc = 1 + static_cast<Timestamp>(rng() % 10);
    const std::size_t sizes[] = {2, 3, 4};
    const auto all = count_motifs(g, sizes, dc, {true, 1});
    for (std::size_t k = 0; k < 3; ++k) {
      CAPTURE(trial);
      CHECK(as_strings(all[k]) == oracle::count_motifs(events, sizes[k], dc));
      CHECK(as_strings(count_motifs(g, sizes[k], dc, {false, 1})) ==
            oracle::count_motifs(events, sizes[k], dc, false));
    }
  }
}

TEST_CASE("pair scan") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const auto events = oracle::random_stream(rng, 300, 25, 5);
    const Timestamp dc = 1 + static_cast<Timestamp>(rng() % 30);
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
      for (std::size_t j = i + 1; j < events.size() && events[j].t - events[i].t <= dc; ++j) {
        const auto& a = events[i];
        const auto& b = events[j];
        pairs += (a.src == b.src || a.src == b.dst || a.dst == b.src || a.dst == b.dst) ? 1 : 0;
      }
    }
    CHECK(count_motifs(TemporalGraph(events), 2, dc).total == pairs);
  }
}

TEST_CASE("monotone in the window") {
  std::mt19937_64 rng(53);
  const TemporalGraph g(oracle::random_stream(rng, 400, 30, 6));
  for (std::size_t l = 2; l <= 4; ++l) {
    std::uint64_t prev = 0;
    for (Timestamp dc : {1, 2, 4, 8, 16, 32}) {
      const auto sc = count_motifs(g, l, dc);
      CHECK(sc.total >= prev);
      prev = sc.total;
    }
  }
}

TEST_CASE("relabeling and shifting leave counts unchanged") {
  std::mt19937_64 rng(59);
  const auto events = oracle::random_stream(rng, 300, 20, 6);
  std::vector<NodeId> perm(20);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Event> moved;
  for (const auto& e : events) moved.push_back({perm[e.src] + 1000, perm[e.dst] + 1000, e.t + 123456});
  for (std::size_t l = 2; l <= 4; ++l) {
    CHECK(count_motifs(TemporalGraph(events), l, 10).counts ==
          count_motifs(TemporalGraph(moved), l, 10).counts);
  }
}

TEST_CASE("worker count does not change results") {
  std::mt19937_64 rng(61);
  const TemporalGraph g(oracle::random_stream(rng, 3000, 80, 3));
  const std::size_t sizes[] = {2, 3, 4};
  const auto one = count_motifs(g, sizes, 20, {true, 1});
  const auto four = count_motifs(g, sizes, 20, {true, 4});
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(one[k].counts == four[k].counts);
    CHECK(one[k].total == four[k].total);
  }
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}
