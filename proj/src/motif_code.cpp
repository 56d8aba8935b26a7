#include "mtm/motif_code.hpp"

#include <algorithm>
#include <cstring>

namespace mtm {

MotifCode::MotifCode() noexcept {
  digits_[0] = 0;
  digits_[1] = 1;
}

MotifCode MotifCode::from_pairs(std::span<const DigitPair> pairs) {
  if (pairs.empty()) throw CodeError("motif code needs at least one event");
  if (pairs.front() != DigitPair{0, 1}) throw CodeError("motif code must start with 01");
  MotifCode code;
  for (std::size_t i = 1; i < pairs.size(); ++i) code = code.extend(pairs[i].src, pairs[i].dst);
  return code;
}

MotifCode MotifCode::parse(std::string_view text) {
  if (text.size() < 2 || text.size() % 2 != 0) {
    throw CodeError("motif code '" + std::string(text) + "' must have an even number of digits");
  }
  if (text.size() > 2 * kMaxEvents) {
    throw CodeError("motif code '" + std::string(text) + "' exceeds " +
                    std::to_string(kMaxEvents) + " events");
  }
  std::vector<DigitPair> pairs;
  for (std::size_t i = 0; i < text.size(); i += 2) {
    const char a = text[i];
    const char b = text[i + 1];
    if (a < '0' || a > '9' || b < '0' || b > '9') {
      throw CodeError("motif code '" + std::string(text) + "' contains a non-digit");
    }
    pairs.push_back({static_cast<std::uint8_t>(a - '0'), static_cast<std::uint8_t>(b - '0')});
  }
  try {
    return from_pairs(pairs);
  } catch (const CodeError& e) {
    throw CodeError("invalid motif code '" + std::string(text) + "': " + e.what());
  }
}

std::vector<DigitPair> MotifCode::pairs() const {
  std::vector<DigitPair> out;
  out.reserve(length_);
  for (std::size_t i = 0; i < length_; ++i) out.push_back(pair(i));
  return out;
}

bool MotifCode::can_extend(std::uint8_t src, std::uint8_t dst) const noexcept {
  if (length_ >= kMaxEvents) return false;
  if (src == dst) return false;
  if (src > nodes_ || dst > nodes_) return false;
  // At most one new digit, and it must be the next unused one.
  return src < nodes_ || dst < nodes_;
}

MotifCode MotifCode::extend(std::uint8_t src, std::uint8_t dst) const {
  if (length_ >= kMaxEvents) {
    throw CodeError("cannot extend " + to_string() + ": already " + std::to_string(kMaxEvents) +
                    " events");
  }
  if (!can_extend(src, dst)) {
    throw CodeError("cannot extend " + to_string() + " with pair (" + std::to_string(src) + "," +
                    std::to_string(dst) + ")");
  }
  MotifCode next = *this;
  next.digits_[2 * length_] = src;
  next.digits_[2 * length_ + 1] = dst;
  next.length_ = static_cast<std::uint8_t>(length_ + 1);
  if (src == nodes_ || dst == nodes_) next.nodes_ = static_cast<std::uint8_t>(nodes_ + 1);
  return next;
}

MotifCode MotifCode::prefix(std::size_t k) const {
  if (k == 0 || k > length_) throw CodeError("prefix length out of range");
  MotifCode out = *this;
  for (std::size_t i = 2 * k; i < out.digits_.size(); ++i) out.digits_[i] = 0;
  out.length_ = static_cast<std::uint8_t>(k);
  std::uint8_t max_digit = 0;
  for (std::size_t i = 0; i < 2 * k; ++i) max_digit = std::max(max_digit, out.digits_[i]);
  out.nodes_ = static_cast<std::uint8_t>(max_digit + 1);
  return out;
}

bool MotifCode::is_prefix_of(const MotifCode& other) const noexcept {
  if (length_ > other.length_) return false;
  return std::equal(digits_.begin(), digits_.begin() + 2 * length_, other.digits_.begin());
}

std::size_t MotifCode::static_edge_count() const noexcept {
  std::array<DigitPair, kMaxEvents> seen{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < length_; ++i) {
    const DigitPair p = pair(i);
    if (std::find(seen.begin(), seen.begin() + n, p) == seen.begin() + n) seen[n++] = p;
  }
  return n;
}

std::string MotifCode::to_string() const {
  std::string s(2 * length_, '0');
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<char>('0' + digits_[i]);
  return s;
}

bool operator==(const MotifCode& a, const MotifCode& b) noexcept {
  return a.length_ == b.length_ && a.digits_ == b.digits_;
}

std::strong_ordering operator<=>(const MotifCode& a, const MotifCode& b) noexcept {
  const std::size_t n = 2 * std::min(a.length_, b.length_);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.digits_[i] <=> b.digits_[i]; c != 0) return c;
  }
  return a.length_ <=> b.length_;
}

std::size_t MotifCode::hash() const noexcept {
  std::uint64_t h = length_;
  for (std::size_t i = 0; i < 2 * length_; ++i) h = h * 8 + digits_[i];
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

MotifCode encode(std::span<const Event> events) {
  if (events.empty()) throw CodeError("cannot encode an empty event list");
  if (events.size() > MotifCode::kMaxEvents) {
    throw CodeError("cannot encode more than " + std::to_string(MotifCode::kMaxEvents) +
                    " events");
  }
  std::array<NodeId, MotifCode::kMaxNodes> nodes{};
  std::size_t n = 0;
  auto digit_of = [&](NodeId id) -> std::size_t {
    for (std::size_t d = 0; d < n; ++d) {
      if (nodes[d] == id) return d;
    }
    return n;
  };

  MotifCode code;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    if (e.src == e.dst) throw CodeError("cannot encode self-loop event");
    const std::size_t known = n;
    std::size_t src = digit_of(e.src);
    std::size_t dst = digit_of(e.dst);
    if (i > 0 && src == known && dst == known) {
      throw CodeError("event " + std::to_string(i) + " is not connected to earlier events");
    }
    if (src == known) nodes[n++] = e.src;
    if (dst == known) {
      dst = n;
      nodes[n++] = e.dst;
    }
    if (i > 0) code = code.extend(static_cast<std::uint8_t>(src), static_cast<std::uint8_t>(dst));
  }
  return code;
}

std::vector<MotifCode> enumerate_codes(std::size_t l) {
  if (l == 0 || l > MotifCode::kMaxEvents) {
    throw std::invalid_argument("enumerate_codes: l must be in [1, " +
                                std::to_string(MotifCode::kMaxEvents) + "]");
  }
  std::vector<MotifCode> level{MotifCode::single()};
  for (std::size_t k = 1; k < l; ++k) {
    std::vector<MotifCode> next;
    next.reserve(level.size() * (k + 2) * (k + 3));
    for (const auto& code : level) {
      const auto n = static_cast<std::uint8_t>(code.node_count());
      for (std::uint8_t a = 0; a <= n; ++a) {
        for (std::uint8_t b = 0; b <= n; ++b) {
          if (code.can_extend(a, b)) next.push_back(code.extend(a, b));
        }
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

std::uint64_t count_codes(std::size_t l) {
  if (l == 0) return 0;
  // by_nodes[n] = number of codes with n nodes at the current length.
  std::vector<std::uint64_t> by_nodes(l + 2, 0);
  by_nodes[2] = 1;
  for (std::size_t k = 1; k < l; ++k) {
    std::vector<std::uint64_t> next(l + 2, 0);
    for (std::size_t n = 2; n + 1 < by_nodes.size(); ++n) {
      if (by_nodes[n] == 0) continue;
      next[n] += by_nodes[n] * n * (n - 1);  // both endpoints already present
      next[n + 1] += by_nodes[n] * 2 * n;    // one new endpoint, either direction
    }
    by_nodes = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto c : by_nodes) total += c;
  return total;
}

std::uint64_t transition_type_total(std::size_t l_max) {
  std::uint64_t total = 0;
  for (std::size_t l = 2; l <= l_max; ++l) total += count_codes(l);
  return total;
}

}  // namespace mtm
