#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mtm {

using NodeId = std::int64_t;
using Timestamp = std::int64_t;

/// One directed interaction `src -> dst` at integer second `t`.
struct Event {
  NodeId src = 0;
  NodeId dst = 0;
  Timestamp t = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Directed node pair of the static projection.
struct StaticEdge {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const StaticEdge&, const StaticEdge&) = default;
};

struct StaticEdgeHash {
  std::size_t operator()(const StaticEdge& e) const noexcept {
    auto h = static_cast<std::uint64_t>(e.src) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(e.dst) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Time-ordered event stream. Order is (t, input index); equal timestamps keep
/// their input order.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  /// Stable-sorts `events` by timestamp. Self-loops are not filtered here.
  explicit TemporalGraph(std::vector<Event> events);

  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }

  std::size_t node_count() const noexcept { return node_count_; }
  /// t_last - t_first, 0 for an empty graph.
  Timestamp timespan() const noexcept;

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
    return a.events_ == b.events_;
  }

 private:
  std::vector<Event> events_;
  std::size_t node_count_ = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseResult {
  TemporalGraph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t comment_lines = 0;
};

/// Parses SNAP-style "src dst t" lines. Blank and '#' lines are skipped,
/// self-loops are dropped and counted, duplicates are kept.
ParseResult parse_events(std::string_view text);
ParseResult parse_events(std::istream& in);
ParseResult read_events_file(const std::string& path);

void write_events(const TemporalGraph& g, std::ostream& out);
std::string write_events(const TemporalGraph& g);
void write_events_file(const TemporalGraph& g, const std::string& path,
                       std::string_view header_comment = {});

/// Deduplicated directed pairs, sorted.
std::vector<StaticEdge> static_projection(const TemporalGraph& g);
std::vector<StaticEdge> static_projection(std::span<const Event> events);

}  // namespace mtm
