#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace symchaos {

using Bits = std::vector<std::uint8_t>;

/// Upper bound on the number of bits a single Word may carry (preperiod plus
/// period). Read once from SYMCHAOS_MAX_BITS, default 2^22.
std::size_t max_word_bits();

/// An eventually periodic element of {0,1}^N, written pre·period^∞.
///
/// Words are always canonical: the period is primitive and the preperiod is
/// as short as possible, so structural equality is sequence equality.
/// Indices are 1-based to match the usual notation ψ(1), ψ(2), ...
class Word {
 public:
  /// Canonicalizes. Throws std::invalid_argument on an empty period or a
  /// non-binary entry, std::length_error past max_word_bits().
  Word(Bits preperiod, Bits period);

  static Word periodic(Bits period) { return Word({}, std::move(period)); }
  static Word constant(std::uint8_t bit) { return Word({}, Bits{bit}); }
  /// Text form `pre:period`, e.g. `1:0` for 10^∞ and `:10` for (10)^∞.
  static Word parse(std::string_view text);

  /// For callers that produce canonical data by construction (maps that
  /// preserve canonicity, exact long division). Checked only in debug builds.
  static Word from_canonical(Bits preperiod, Bits period);

  const Bits& preperiod() const { return pre_; }
  const Bits& period() const { return period_; }

  std::uint8_t bit(std::size_t i) const {
    return i <= pre_.size() ? pre_[i - 1] : period_[(i - pre_.size() - 1) % period_.size()];
  }
  /// Bits 1..n.
  Bits prefix(std::size_t n) const;

  bool eventually_constant() const { return period_.size() == 1; }
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Orders by (preperiod, period), each lexicographically.
  friend std::strong_ordering operator<=>(const Word&, const Word&) = default;

 private:
  struct Trusted {};
  Word(Trusted, Bits preperiod, Bits period);

  Bits pre_;
  Bits period_;
};

/// True iff (pre, period) is already in canonical form.
bool is_canonical(const Bits& preperiod, const Bits& period);

}  // namespace symchaos
