#include "mtm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

namespace mtm {

namespace {

std::size_t count_nodes(const std::vector<Event>& events) {
  std::unordered_set<NodeId> nodes;
  nodes.reserve(events.size());
  for (const auto& e : events) {
    nodes.insert(e.src);
    nodes.insert(e.dst);
  }
  return nodes.size();
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits on whitespace into at most 4 fields; a 4th field means "too many".
std::size_t split_fields(std::string_view line, std::string_view (&fields)[4]) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < line.size() && n < 4) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    fields[n++] = line.substr(i, j - i);
    i = j;
  }
  return n;
}

std::int64_t to_int(std::string_view field, std::size_t line_no, const char* name) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line_no, std::string("field '") + name + "' is not an integer: '" +
                                  std::string(field) + "'");
  }
  return value;
}

}  // namespace

TemporalGraph::TemporalGraph(std::vector<Event> events) : events_(std::move(events)) {
  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  node_count_ = count_nodes(events_);
}

Timestamp TemporalGraph::timespan() const noexcept {
  if (events_.empty()) return 0;
  return events_.back().t - events_.front().t;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

ParseResult parse_events(std::string_view text) {
  ParseResult result;
  std::vector<Event> events;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) continue;
    if (line[first] == '#') {
      ++result.comment_lines;
      continue;
    }

    std::string_view fields[4];
    const std::size_t n = split_fields(line, fields);
    if (n != 3) {
      throw ParseError(line_no, "expected 3 fields \"src dst t\", got " +
                                    std::string(n > 3 ? "more than 3" : std::to_string(n)));
    }
    Event e{to_int(fields[0], line_no, "src"), to_int(fields[1], line_no, "dst"),
            to_int(fields[2], line_no, "t")};
    if (e.t < 0) {
      throw ValidationError("line " + std::to_string(line_no) + ": negative timestamp " +
                            std::to_string(e.t));
    }
    if (e.src < 0 || e.dst < 0) {
      throw ValidationError("line " + std::to_string(line_no) + ": negative node id");
    }
    if (e.src == e.dst) {
      ++result.self_loops_dropped;
      continue;
    }
    events.push_back(e);
  }
  result.graph = TemporalGraph(std::move(events));
  return result;
}

ParseResult parse_events(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_events(std::string_view(text));
}

ParseResult read_events_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_events(in);
}

void write_events(const TemporalGraph& g, std::ostream& out) {
  for (const auto& e : g.events()) out << e.src << ' ' << e.dst << ' ' << e.t << '\n';
}

std::string write_events(const TemporalGraph& g) {
  std::ostringstream out;
  write_events(g, out);
  return std::move(out).str();
}

void write_events_file(const TemporalGraph& g, const std::string& path,
                       std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  write_events(g, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<StaticEdge> static_projection(std::span<const Event> events) {
  std::vector<StaticEdge> edges;
  edges.reserve(events.size());
  for (const auto& e : events) edges.push_back({e.src, e.dst});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<StaticEdge> static_projection(const TemporalGraph& g) {
  return static_projection(std::span<const Event>(g.events()));
}

}  // namespace mtm
