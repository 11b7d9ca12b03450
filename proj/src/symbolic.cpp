#include "symchaos/symbolic.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace symchaos {

namespace {

__extension__ using u128 = unsigned __int128;

Bits rotate_left(const Bits& bits, std::size_t k) {
  const std::size_t n = bits.size();
  Bits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = bits[(i + k) % n];
  return out;
}

void check_length(std::size_t bits) {
  if (bits > max_word_bits()) {
    throw std::length_error("expansion of " + std::to_string(bits) +
                            " bits exceeds SYMCHAOS_MAX_BITS");
  }
}

// Expansions of the reduced fraction p/q, 0 <= p <= q < 2^63.
std::vector<Word> expansions_u64(std::uint64_t p, std::uint64_t q) {
  if (p == 0) return {Word::constant(0)};
  if (p == q) return {Word::constant(1)};

  const int twos = std::countr_zero(q);
  const std::uint64_t odd = q >> twos;

  if (odd == 1) {
    // p odd, q = 2^twos: finite expansion ending in a 1.
    Bits head(static_cast<std::size_t>(twos));
    for (int i = 0; i < twos; ++i) head[i] = static_cast<std::uint8_t>((p >> (twos - 1 - i)) & 1U);
    Bits alt = head;
    alt.back() = 0;
    return {Word::from_canonical(std::move(head), Bits{0}),
            Word::from_canonical(std::move(alt), Bits{1})};
  }

  // Long division. The doubling orbit of p/q turns periodic after exactly
  // `twos` steps and the period is the order of 2 modulo the odd part, so
  // the result is canonical as produced.
  std::uint64_t r = p;
  auto next = [&]() -> std::uint8_t {
    r <<= 1;
    if (r >= q) {
      r -= q;
      return 1;
    }
    return 0;
  };
  Bits pre(static_cast<std::size_t>(twos));
  for (auto& b : pre) b = next();
  const std::uint64_t start = r;
  Bits period;
  do {
    period.push_back(next());
    if (period.size() + pre.size() > max_word_bits()) check_length(period.size() + pre.size());
  } while (r != start);
  return {Word::from_canonical(std::move(pre), std::move(period))};
}

// Same for arbitrary-size reduced p/q.
std::vector<Word> expansions_big(const mpz_class& p, const mpz_class& q) {
  if (p == 0) return {Word::constant(0)};
  if (p == q) return {Word::constant(1)};
  const std::size_t twos = mpz_scan1(q.get_mpz_t(), 0);
  mpz_class odd = q >> twos;
  if (odd == 1 && twos > 0) {
    check_length(twos);
    Bits head(twos);
    for (std::size_t i = 0; i < twos; ++i) {
      head[i] = static_cast<std::uint8_t>(mpz_tstbit(p.get_mpz_t(), twos - 1 - i));
    }
    Bits alt = head;
    alt.back() = 0;
    return {Word::from_canonical(std::move(head), Bits{0}),
            Word::from_canonical(std::move(alt), Bits{1})};
  }
  mpz_class r = p;
  auto next = [&]() -> std::uint8_t {
    r <<= 1;
    if (r >= q) {
      r -= q;
      return 1;
    }
    return 0;
  };
  check_length(twos);
  Bits pre(twos);
  for (auto& b : pre) b = next();
  const mpz_class start = r;
  Bits period;
  do {
    period.push_back(next());
    check_length(period.size() + pre.size());
  } while (r != start);
  return {Word::from_canonical(std::move(pre), std::move(period))};
}

mpz_class bits_to_mpz(const Bits& bits) {
  mpz_class z;
  if (bits.empty()) return z;
  // Pack most-significant bit first into bytes, padding at the front.
  const std::size_t nbytes = (bits.size() + 7) / 8;
  std::vector<unsigned char> bytes(nbytes, 0);
  const std::size_t pad = nbytes * 8 - bits.size();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::size_t pos = i + pad;
    if (bits[i]) bytes[pos / 8] |= static_cast<unsigned char>(0x80U >> (pos % 8));
  }
  mpz_import(z.get_mpz_t(), nbytes, 1, 1, 1, 0, bytes.data());
  return z;
}

Rational value_by_series(const Word& w) {
  const std::size_t m = w.preperiod().size();
  const std::size_t len = w.period().size();
  const mpz_class a = bits_to_mpz(w.preperiod());
  const mpz_class b = bits_to_mpz(w.period());
  const mpz_class cycle = (mpz_class(1) << len) - 1;
  mpq_class v(a * cycle + b, cycle << m);
  v.canonicalize();
  return Rational(std::move(v));
}

// Smallest-denominator fraction in the closed interval [ln/ld, hn/hd].
void simplest_between(u128 ln, u128 ld, u128 hn, u128 hd, u128& p, u128& q) {
  const u128 f = ln / ld;
  if (f * ld == ln) {
    p = f;
    q = 1;
    return;
  }
  if ((f + 1) * hd <= hn) {
    p = f + 1;
    q = 1;
    return;
  }
  // x = f + 1/y with y in [hd/(hn - f hd), ld/(ln - f ld)].
  u128 yp = 0;
  u128 yq = 0;
  simplest_between(hd, hn - f * hd, ld, ln - f * ld, yp, yq);
  p = f * yp + yq;
  q = yp;
}

// The value from the first 64 bits, confirmed by regenerating the
// expansion exactly. Returns false when no small fraction matches.
bool value_by_reconstruction(const Word& w, Rational& out) {
  std::uint64_t a = 0;
  for (std::size_t i = 1; i <= 64; ++i) a = (a << 1) | w.bit(i);
  const u128 scale = u128{1} << 64;
  u128 p = 0;
  u128 q = 0;
  simplest_between(a, scale, u128{a} + 1, scale, p, q);
  if (q >= (u128{1} << 62) || p > q) return false;
  const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q));
  p /= g;
  q /= g;
  const auto num = static_cast<std::uint64_t>(p);
  const auto den = static_cast<std::uint64_t>(q);
  std::uint64_t odd = den;
  std::size_t twos = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++twos;
  }
  const std::size_t m = w.preperiod().size();
  const std::size_t len = w.period().size();
  if (odd == 1) {
    for (const auto& e : expansions_u64(num, den)) {
      if (e == w) {
        out = Rational(num, den);
        return true;
      }
    }
    return false;
  }
  // p/q has the shape of w only if q divides 2^m (2^len - 1).
  if (twos > m) return false;
  u128 power = 1;
  u128 base = 2 % odd;
  for (std::size_t e = len; e > 0; e >>= 1) {
    if (e & 1U) power = power * base % odd;
    base = base * base % odd;
  }
  if (power != 1) return false;
  // Then both are determined by their first m + len bits.
  u128 r = num;
  for (std::size_t i = 1; i <= m + len; ++i) {
    r *= 2;
    const std::uint8_t bit = r >= den ? 1 : 0;
    if (bit) r -= den;
    if (bit != w.bit(i)) return false;
  }
  out = Rational(num, den);
  return true;
}

}  // namespace

Word shift_map(const Word& w) {
  const Bits& pre = w.preperiod();
  if (!pre.empty()) return Word::from_canonical(Bits(pre.begin() + 1, pre.end()), w.period());
  return Word::from_canonical({}, rotate_left(w.period(), 1));
}

Word drop_prefix(const Word& w, std::size_t k) {
  const Bits& pre = w.preperiod();
  if (k <= pre.size()) {
    return Word::from_canonical(Bits(pre.begin() + static_cast<std::ptrdiff_t>(k), pre.end()),
                                w.period());
  }
  return Word::from_canonical({}, rotate_left(w.period(), (k - pre.size()) % w.period().size()));
}

Word prepend(const Bits& prefix, const Word& w) {
  Bits pre = prefix;
  pre.insert(pre.end(), w.preperiod().begin(), w.preperiod().end());
  return Word(std::move(pre), w.period());
}

Word complement(const Word& w) {
  Bits pre = w.preperiod();
  Bits period = w.period();
  for (auto& b : pre) b ^= 1U;
  for (auto& b : period) b ^= 1U;
  return Word::from_canonical(std::move(pre), std::move(period));
}

Word c_map(const Word& w) {
  Word shifted = shift_map(w);
  return w.bit(1) ? complement(shifted) : shifted;
}

Word r_map(const Word& w) {
  const std::size_t m = w.preperiod().size();
  const std::size_t len = w.period().size();
  Bits pre(m);
  Bits period(len);
  for (std::size_t i = 1; i <= m; ++i) pre[i - 1] = w.bit(i) ^ w.bit(i + 1);
  for (std::size_t i = 1; i <= len; ++i) period[i - 1] = w.bit(m + i) ^ w.bit(m + i + 1);
  return Word(std::move(pre), std::move(period));
}

Word r_inverse(const Word& w) {
  const std::size_t m = w.preperiod().size();
  const std::size_t len = w.period().size();
  check_length(m + 2 * len);
  // out(1) = 0, out(i + 1) = out(i) XOR w(i); periodic with period 2L from m + 1.
  Bits out(m + 2 * len);
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = acc;
    acc ^= w.bit(i + 1);
  }
  Bits pre(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(m));
  Bits period(out.begin() + static_cast<std::ptrdiff_t>(m), out.end());
  return Word(std::move(pre), std::move(period));
}

Rational word_value(const Word& w) {
  const std::size_t m = w.preperiod().size();
  const std::size_t len = w.period().size();
  if (m + len <= 62) {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    for (auto bit : w.preperiod()) a = (a << 1) | bit;
    for (auto bit : w.period()) b = (b << 1) | bit;
    const std::uint64_t cycle = (std::uint64_t{1} << len) - 1;
    return Rational(a * cycle + b, cycle << m);
  }
  Rational out;
  if (value_by_reconstruction(w, out)) return out;
  return value_by_series(w);
}

Rational word_metric(const Word& a, const Word& b) {
  const std::size_t m = std::max(a.preperiod().size(), b.preperiod().size());
  const std::size_t len = std::lcm(a.period().size(), b.period().size());
  check_length(m + len);
  Bits pre(m);
  Bits period(len);
  for (std::size_t i = 1; i <= m; ++i) pre[i - 1] = a.bit(i) ^ b.bit(i);
  for (std::size_t i = 1; i <= len; ++i) period[i - 1] = a.bit(m + i) ^ b.bit(m + i);
  return word_value(Word(std::move(pre), std::move(period)));
}

std::vector<Word> bits_of(const Rational& t) {
  if (!t.in_unit_interval()) {
    throw std::domain_error("bits_of: " + t.to_string() + " is outside [0, 1]");
  }
  const mpz_class p = t.numerator();
  const mpz_class q = t.denominator();
  if (mpz_sizeinbase(q.get_mpz_t(), 2) <= 62) {
    return expansions_u64(p.get_ui(), q.get_ui());
  }
  return expansions_big(p, q);
}

bool primitive_periodic_word(unsigned n, std::uint64_t seed, Word& out) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::uint64_t rotated = ((seed << d) | (seed >> (n - d))) & mask;
    if (rotated == seed) return false;
  }
  Bits period(n);
  for (unsigned i = 0; i < n; ++i) period[i] = static_cast<std::uint8_t>((seed >> (n - 1 - i)) & 1U);
  out = Word::from_canonical({}, std::move(period));
  return true;
}

void for_each_primitive_periodic_word(unsigned n, const std::function<void(const Word&)>& visit,
                                      unsigned bound) {
  if (n == 0 || n > bound || n > 62) {
    throw std::out_of_range("period " + std::to_string(n) + " outside 1.." + std::to_string(bound));
  }
  Word w = Word::constant(0);
  for (std::uint64_t seed = 0; seed < (std::uint64_t{1} << n); ++seed) {
    if (primitive_periodic_word(n, seed, w)) visit(w);
  }
}

std::vector<Word> periodic_words(unsigned n, unsigned bound) {
  if (n == 0 || n > bound || n > 62) {
    throw std::out_of_range("period " + std::to_string(n) + " outside 1.." + std::to_string(bound));
  }
  std::vector<Word> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t seed = 0; seed < (std::uint64_t{1} << n); ++seed) {
    Bits period(n);
    for (unsigned i = 0; i < n; ++i) period[i] = static_cast<std::uint8_t>((seed >> (n - 1 - i)) & 1U);
    out.push_back(Word::periodic(std::move(period)));
  }
  return out;
}

}  // namespace symchaos
