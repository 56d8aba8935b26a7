#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtm/io.hpp"

namespace mtm {

class CodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DigitPair {
  std::uint8_t src = 0;
  std::uint8_t dst = 0;

  friend auto operator<=>(const DigitPair&, const DigitPair&) = default;
};

/// Canonical digit notation of a temporal motif type: one (src, dst) digit
/// pair per event in chronological order, nodes numbered by first
/// appearance. `01` is the single-event motif, `011202` the 3-event
/// triangle 0->1, 1->2, 0->2.
///
/// Stored inline (no allocation). Holds at most kMaxEvents events, so at most
/// kMaxEvents + 1 distinct digits and every digit is a single character.
class MotifCode {
 public:
  static constexpr std::size_t kMaxEvents = 6;
  static constexpr std::size_t kMaxNodes = kMaxEvents + 1;

  /// The single-event code `01`.
  MotifCode() noexcept;

  static MotifCode single() noexcept { return MotifCode(); }

  /// Parses "011202". Throws CodeError if the string is not a valid code.
  static MotifCode parse(std::string_view text);

  /// Builds a code from explicit pairs, validating every invariant.
  static MotifCode from_pairs(std::span<const DigitPair> pairs);

  /// Number of events l.
  std::size_t size() const noexcept { return length_; }
  /// Number of nodes n (max digit + 1).
  std::size_t node_count() const noexcept { return nodes_; }

  DigitPair pair(std::size_t i) const noexcept { return {digits_[2 * i], digits_[2 * i + 1]}; }
  DigitPair last() const noexcept { return pair(length_ - 1); }
  std::vector<DigitPair> pairs() const;

  /// True if (src, dst) is a legal next event for this code.
  bool can_extend(std::uint8_t src, std::uint8_t dst) const noexcept;
  /// Appends one event. Throws CodeError on an illegal pair or when full.
  MotifCode extend(std::uint8_t src, std::uint8_t dst) const;

  /// First `k` events, 1 <= k <= size().
  MotifCode prefix(std::size_t k) const;
  bool is_prefix_of(const MotifCode& other) const noexcept;

  /// Number of distinct directed digit pairs.
  std::size_t static_edge_count() const noexcept;

  std::string to_string() const;

  friend bool operator==(const MotifCode& a, const MotifCode& b) noexcept;
  friend std::strong_ordering operator<=>(const MotifCode& a, const MotifCode& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  std::array<std::uint8_t, 2 * kMaxEvents> digits_{};
  std::uint8_t length_ = 1;
  std::uint8_t nodes_ = 2;
};

struct MotifCodeHash {
  std::size_t operator()(const MotifCode& c) const noexcept { return c.hash(); }
};

/// Encodes a chronologically ordered event list. Throws CodeError for
/// self-loops, prefix-disconnected lists, or more than kMaxEvents events.
MotifCode encode(std::span<const Event> events);

/// Every valid code with exactly `l` events, sorted. 1 <= l <= kMaxEvents.
std::vector<MotifCode> enumerate_codes(std::size_t l);

/// |enumerate_codes(l)| computed by counting over node-count states,
/// without materializing codes.
std::uint64_t count_codes(std::size_t l);

/// Number of possible transition types for a size limit: the sum of
/// count_codes(l) for 2 <= l <= l_max.
std::uint64_t transition_type_total(std::size_t l_max);

}  // namespace mtm

template <>
struct std::hash<mtm::MotifCode> {
  std::size_t operator()(const mtm::MotifCode& c) const noexcept { return c.hash(); }
};
