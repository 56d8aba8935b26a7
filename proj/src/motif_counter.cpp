#include "mtm/motif_counter.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace mtm {

namespace {

// Every code up to `depth` events as a trie over appended digit pairs.
class CodeTrie {
 public:
  static constexpr std::size_t kDigits = kMaxCountedEvents + 1;
  static constexpr std::int32_t kNone = -1;

  explicit CodeTrie(std::size_t depth) {
    codes_.push_back(MotifCode::single());
    for (std::size_t i = 0; i < codes_.size(); ++i) {
      children_.resize(codes_.size() * kDigits * kDigits, kNone);
      const MotifCode code = codes_[i];
      if (code.size() >= depth) continue;
      const auto n = static_cast<std::uint8_t>(code.node_count());
      for (std::uint8_t a = 0; a <= n; ++a) {
        for (std::uint8_t b = 0; b <= n; ++b) {
          if (!code.can_extend(a, b)) continue;
          children_[i * kDigits * kDigits + a * kDigits + b] =
              static_cast<std::int32_t>(codes_.size());
          codes_.push_back(code.extend(a, b));
        }
      }
    }
    children_.resize(codes_.size() * kDigits * kDigits, kNone);
  }

  std::int32_t child(std::int32_t node, std::uint8_t a, std::uint8_t b) const noexcept {
    return children_[static_cast<std::size_t>(node) * kDigits * kDigits + a * kDigits + b];
  }
  const MotifCode& code(std::size_t node) const noexcept { return codes_[node]; }
  std::size_t size() const noexcept { return codes_.size(); }

 private:
  std::vector<MotifCode> codes_;
  std::vector<std::int32_t> children_;
};

const CodeTrie& trie_for(std::size_t depth) {
  static const CodeTrie tries[] = {CodeTrie(2), CodeTrie(3), CodeTrie(4)};
  static_assert(kMaxCountedEvents == 4);
  return tries[depth - 2];
}

// Event endpoints relabeled densely plus a per-node list of incident event
// indices in graph order.
struct IncidenceIndex {
  std::vector<std::uint32_t> src;
  std::vector<std::uint32_t> dst;
  std::vector<Timestamp> t;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> incident;

  explicit IncidenceIndex(const TemporalGraph& g) {
    std::unordered_map<NodeId, std::uint32_t> dense;
    dense.reserve(g.node_count() * 2);
    auto id = [&](NodeId n) {
      auto [it, inserted] = dense.try_emplace(n, static_cast<std::uint32_t>(dense.size()));
      return it->second;
    };
    src.reserve(g.size());
    dst.reserve(g.size());
    t.reserve(g.size());
    for (const auto& e : g.events()) {
      src.push_back(id(e.src));
      dst.push_back(id(e.dst));
      t.push_back(e.t);
    }
    offsets.assign(dense.size() + 1, 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      ++offsets[src[i] + 1];
      ++offsets[dst[i] + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    incident.resize(offsets.back());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < src.size(); ++i) {
      incident[fill[src[i]]++] = static_cast<std::uint32_t>(i);
      incident[fill[dst[i]]++] = static_cast<std::uint32_t>(i);
    }
  }
};

class Enumerator {
 public:
  Enumerator(const IncidenceIndex& index, const CodeTrie& trie, std::size_t depth,
             Timestamp delta_c, bool inclusive)
      : index_(index), trie_(trie), depth_(depth), delta_c_(delta_c), inclusive_(inclusive),
        counts_(trie.size(), 0) {}

  void root(std::uint32_t e) {
    if (index_.src[e] == index_.dst[e]) return;  // not encodable
    nodes_[0] = index_.src[e];
    nodes_[1] = index_.dst[e];
    n_ = 2;
    grow(1, e, 0);
  }

  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  std::uint8_t digit(std::uint32_t node) const noexcept {
    for (std::uint8_t d = 0; d < n_; ++d) {
      if (nodes_[d] == node) return d;
    }
    return n_;
  }

  bool within(Timestamp gap) const noexcept { return inclusive_ ? gap <= delta_c_ : gap < delta_c_; }

  void grow(std::size_t size, std::uint32_t last, std::int32_t code) {
    ++counts_[static_cast<std::size_t>(code)];
    if (size == depth_) return;
    const Timestamp t_last = index_.t[last];
    const std::uint8_t n_here = n_;
    for (std::uint8_t d = 0; d < n_here; ++d) {
      const std::uint32_t x = nodes_[d];
      const auto first = index_.incident.begin() + static_cast<std::ptrdiff_t>(index_.offsets[x]);
      const auto end = index_.incident.begin() + static_cast<std::ptrdiff_t>(index_.offsets[x + 1]);
      for (auto it = std::upper_bound(first, end, last); it != end; ++it) {
        const std::uint32_t e = *it;
        if (!within(index_.t[e] - t_last)) break;
        if (index_.src[e] == index_.dst[e]) continue;
        const std::uint32_t other = index_.src[e] == x ? index_.dst[e] : index_.src[e];
        const std::uint8_t d_other = digit(other);
        // An event touching two motif nodes is taken from the lower digit's list.
        if (d_other < d) continue;
        const std::uint8_t ds = digit(index_.src[e]);
        const std::uint8_t dd = digit(index_.dst[e]);
        const std::int32_t next = trie_.child(code, ds, dd);
        const bool grows = d_other == n_;
        if (grows) nodes_[n_++] = other;
        grow(size + 1, e, next);
        if (grows) --n_;
      }
    }
  }

  const IncidenceIndex& index_;
  const CodeTrie& trie_;
  std::size_t depth_;
  Timestamp delta_c_;
  bool inclusive_;
  std::uint32_t nodes_[kMaxCountedEvents + 1] = {};
  std::uint8_t n_ = 0;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MTM_WORKERS"); env != nullptr) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SpectrumCounts> count_motifs(const TemporalGraph& g, std::span<const std::size_t> sizes,
                                         Timestamp delta_c, const CountOptions& options) {
  if (delta_c <= 0) throw std::invalid_argument("delta_c must be positive");
  std::size_t depth = 0;
  for (std::size_t l : sizes) {
    if (l < 2 || l > kMaxCountedEvents) {
      throw std::invalid_argument("motif size " + std::to_string(l) + " not supported (2.." +
                                  std::to_string(kMaxCountedEvents) + ")");
    }
    depth = std::max(depth, l);
  }
  std::vector<SpectrumCounts> out;
  if (sizes.empty()) return out;

  const CodeTrie& trie = trie_for(depth);
  const IncidenceIndex index(g);
  const auto n_events = static_cast<std::uint32_t>(g.size());
  const unsigned workers = std::min<unsigned>(resolve_workers(options.workers),
                                              std::max<std::uint32_t>(1, n_events / 64));

  std::vector<std::uint64_t> totals(trie.size(), 0);
  if (workers <= 1) {
    Enumerator en(index, trie, depth, delta_c, options.inclusive);
    for (std::uint32_t e = 0; e < n_events; ++e) en.root(e);
    totals = en.counts();
  } else {
    constexpr std::uint32_t kChunk = 256;
    std::atomic<std::uint32_t> cursor{0};
    std::vector<std::vector<std::uint64_t>> partial(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Enumerator en(index, trie, depth, delta_c, options.inclusive);
        for (;;) {
          const std::uint32_t begin = cursor.fetch_add(kChunk);
          if (begin >= n_events) break;
          const std::uint32_t end = std::min(n_events, begin + kChunk);
          for (std::uint32_t e = begin; e < end; ++e) en.root(e);
        }
        partial[w] = en.counts();
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) {
      for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += p[i];
    }
  }

  for (std::size_t l : sizes) {
    SpectrumCounts sc;
    sc.l = l;
    sc.delta_c = delta_c;
    for (std::size_t i = 0; i < trie.size(); ++i) {
      if (trie.code(i).size() != l || totals[i] == 0) continue;
      sc.counts.emplace(trie.code(i), totals[i]);
      sc.total += totals[i];
    }
    out.push_back(std::move(sc));
  }
  return out;
}

SpectrumCounts count_motifs(const TemporalGraph& g, std::size_t l, Timestamp delta_c,
                            const CountOptions& options) {
  const std::size_t sizes[] = {l};
  return std::move(count_motifs(g, sizes, delta_c, options).front());
}

}  // namespace mtm
