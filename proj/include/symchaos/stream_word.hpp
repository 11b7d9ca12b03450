#pragma once

#include <cstdint>
#include <utility>

#include "symchaos/rational.hpp"
#include "symchaos/word.hpp"

namespace symchaos {

/// Which lazily generated sequence a StreamWord walks.
enum class StreamTag : std::uint8_t {
  /// ψ0: all finite binary words concatenated, by length then
  /// lexicographically (0, 1, 00, 01, 10, 11, 000, ...). Advances by S.
  dense,
  /// R^{-1}(ψ0) with first bit 0. Advances by C, so that its C-orbit
  /// mirrors the S-orbit of ψ0 through the conjugacy R.
  dense_conjugate,
};

/// A non-eventually-periodic sequence known through a closed-form bit
/// generator. `offset` counts applications of the tag's own map. Bits are
/// computed on demand, so values are immutable and freely shareable.
class StreamWord {
 public:
  constexpr StreamWord(StreamTag tag, std::uint64_t offset) : tag_(tag), offset_(offset) {}

  StreamTag tag() const { return tag_; }
  std::uint64_t offset() const { return offset_; }

  /// 1-based.
  std::uint8_t bit(std::uint64_t i) const;

  friend bool operator==(const StreamWord&, const StreamWord&) = default;

 private:
  StreamTag tag_;
  std::uint64_t offset_;
};

/// Bit i (1-based) of ψ0.
std::uint8_t dense_bit(std::uint64_t i);

StreamWord dense_word();
StreamWord dense_conjugate_word();

/// One step of the tag's map (S for dense, C for dense_conjugate).
StreamWord stream_shift(const StreamWord& sw);
StreamWord stream_advance(const StreamWord& sw, std::uint64_t steps);

/// Bits offset+1 ... offset+n as seen through the tag's map.
Bits stream_prefix(const StreamWord& sw, std::size_t n);

/// [lo, lo + 2^-p] with lo the value of the first p bits. p >= 1.
std::pair<Rational, Rational> value_enclosure(const StreamWord& sw, unsigned p);

}  // namespace symchaos
