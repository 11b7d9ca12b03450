#include "symchaos/stream_word.hpp"

#include <stdexcept>

namespace symchaos {

namespace {

// 1-based position where the block of length-k words begins:
// 1 + sum_{j<k} j 2^j = 1 + (k - 2) 2^k + 2.
std::uint64_t block_start(unsigned k) {
  return 1 + (((static_cast<std::uint64_t>(k) - 2) << k) + 2);
}

}  // namespace

std::uint8_t dense_bit(std::uint64_t i) {
  if (i == 0) throw std::out_of_range("stream bits are 1-based");
  unsigned k = 1;
  while (block_start(k + 1) <= i) ++k;
  const std::uint64_t off = i - block_start(k);
  const std::uint64_t word = off / k;
  const std::uint64_t pos = off % k;
  return static_cast<std::uint8_t>((word >> (k - 1 - pos)) & 1U);
}

std::uint8_t StreamWord::bit(std::uint64_t i) const {
  if (i == 0) throw std::out_of_range("stream bits are 1-based");
  if (tag_ == StreamTag::dense) return dense_bit(offset_ + i);
  // C^n(φ)(j) = φ(n + j) XOR φ(n), and φ(m) = XOR of ψ0(1..m-1).
  std::uint8_t acc = 0;
  const std::uint64_t from = offset_ == 0 ? 1 : offset_;
  for (std::uint64_t k = from; k < offset_ + i; ++k) acc ^= dense_bit(k);
  return acc;
}

StreamWord dense_word() { return {StreamTag::dense, 0}; }

StreamWord dense_conjugate_word() { return {StreamTag::dense_conjugate, 0}; }

StreamWord stream_shift(const StreamWord& sw) { return stream_advance(sw, 1); }

StreamWord stream_advance(const StreamWord& sw, std::uint64_t steps) {
  return {sw.tag(), sw.offset() + steps};
}

Bits stream_prefix(const StreamWord& sw, std::size_t n) {
  Bits out(n);
  if (sw.tag() == StreamTag::dense) {
    for (std::size_t j = 0; j < n; ++j) out[j] = dense_bit(sw.offset() + j + 1);
    return out;
  }
  // Running XOR instead of per-bit recomputation.
  std::uint8_t acc = 0;
  std::uint64_t k = sw.offset() == 0 ? 1 : sw.offset();
  const std::uint64_t first_end = sw.offset() + 1;
  for (; k < first_end; ++k) acc ^= dense_bit(k);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = acc;
    acc ^= dense_bit(sw.offset() + j + 1);
  }
  return out;
}

std::pair<Rational, Rational> value_enclosure(const StreamWord& sw, unsigned p) {
  if (p == 0) throw std::invalid_argument("enclosure precision must be at least 1");
  const Bits bits = stream_prefix(sw, p);
  mpz_class num = 0;
  for (auto b : bits) num = (num << 1) + b;
  mpz_class den = mpz_class(1) << p;
  Rational lo(mpq_class(num, den));
  Rational hi = lo + Rational::pow2_inverse(p);
  return {std::move(lo), std::move(hi)};
}

}  // namespace symchaos
