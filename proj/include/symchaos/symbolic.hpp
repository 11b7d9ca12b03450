#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "symchaos/rational.hpp"
#include "symchaos/word.hpp"

namespace symchaos {

/// S: drop the first symbol.
Word shift_map(const Word& w);

/// C: shift, then complement every symbol when the dropped symbol was 1.
Word c_map(const Word& w);

/// S^k in one step.
Word drop_prefix(const Word& w, std::size_t k);

/// The word prefix·w.
Word prepend(const Bits& prefix, const Word& w);

/// Global complement 0 <-> 1.
Word complement(const Word& w);

/// R(w)(i) = C^i(w)(1), computed in the closed form w(i) XOR w(i+1).
Word r_map(const Word& w);

/// The preimage of `w` under r_map whose first symbol is 0 (cumulative XOR).
Word r_inverse(const Word& w);

/// Exact value of sum w(i) / 2^i.
Rational word_value(const Word& w);

/// d(a, b) = sum |a(i) - b(i)| / 2^i.
Rational word_metric(const Word& a, const Word& b);

/// Every binary expansion of t in [0, 1]: one Word, or two for t = l/2^n
/// strictly inside (0, 1), ordered [...10^∞, ...01^∞].
/// Throws std::domain_error outside [0, 1].
std::vector<Word> bits_of(const Rational& t);

inline constexpr unsigned kDefaultPeriodBound = 24;

/// All words fixed by S^n (primitive period dividing n), 2^n of them,
/// listed in order of their length-n seed read as a binary integer.
/// Throws std::out_of_range if n is 0 or exceeds `bound`.
std::vector<Word> periodic_words(unsigned n, unsigned bound = kDefaultPeriodBound);

/// Visits the words of primitive period exactly n, in seed order, without
/// materializing them all. Same bound rules as periodic_words.
void for_each_primitive_periodic_word(unsigned n, const std::function<void(const Word&)>& visit,
                                      unsigned bound = kDefaultPeriodBound);

/// The word with primitive period n whose seed is `seed`, or false if the
/// seed is not primitive. Seeds are read most-significant bit first.
bool primitive_periodic_word(unsigned n, std::uint64_t seed, Word& out);

}  // namespace symchaos
