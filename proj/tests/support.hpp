#pragma once

// Independent reference computations and seeded generators for tests. Nothing
// here calls into the library except to build inputs or read results.

#include <cstdint>
#include <gmpxx.h>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "symchaos/rational.hpp"
#include "symchaos/word.hpp"

namespace oracle {

using symchaos::Bits;
using symchaos::Rational;
using symchaos::Word;

inline std::string data_path(const std::string& name) { return std::string(SYMCHAOS_TEST_DATA) + "/" + name; }

/// First n bits of pre·period^∞ by explicit unrolling.
inline Bits unroll(const Bits& pre, const Bits& period, std::size_t n) {
  Bits out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < pre.size() ? pre[i] : period[(i - pre.size()) % period.size()]);
  }
  return out;
}

inline Bits prefix(const Word& w, std::size_t n) { return unroll(w.preperiod(), w.period(), n); }

inline Bits bits_from_seed(std::uint64_t seed, unsigned n) {
  Bits out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = (seed >> (n - 1 - i)) & 1U;
  return out;
}

/// C on a finite prefix: one bit shorter.
inline Bits literal_c(const Bits& b) {
  Bits out;
  for (std::size_t i = 1; i < b.size(); ++i) out.push_back(b[i] ^ b[0]);
  return out;
}

/// R(w)(i) = C^i(w)(1), by literally iterating C on the prefix.
inline Bits literal_r(const Bits& b) {
  Bits out;
  Bits cur = literal_c(b);
  while (!cur.empty()) {
    out.push_back(cur[0]);
    cur = literal_c(cur);
  }
  return out;
}

/// sum_{i<=n} b_i / 2^i.
inline mpq_class partial_sum(const Bits& b) {
  mpz_class num = 0;
  for (auto bit : b) num = num * 2 + bit;
  mpz_class den = 1;
  den <<= b.size();
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

/// Exact value of pre·period^∞ by the geometric series, computed from
/// scratch in mpq.
inline mpq_class series_value(const Bits& pre, const Bits& period) {
  mpq_class a = partial_sum(pre);
  mpz_class cyc = 0;
  for (auto bit : period) cyc = cyc * 2 + bit;
  mpz_class full = 1;
  full <<= period.size();
  mpz_class scale = 1;
  scale <<= pre.size();
  mpq_class tail(cyc, (full - 1) * scale);
  tail.canonicalize();
  mpq_class r = a + tail;
  r.canonicalize();
  return r;
}

inline mpq_class q(const Rational& r) { return r.get(); }

inline mpq_class tent(const mpq_class& x) {
  mpq_class half(1, 2);
  mpq_class r = x <= half ? mpq_class(2 * x) : mpq_class(2 * (1 - x));
  r.canonicalize();
  return r;
}

inline mpq_class baker(const mpq_class& x) {
  mpq_class half(1, 2);
  mpq_class r = x <= half ? mpq_class(2 * x) : mpq_class(2 * x - 1);
  r.canonicalize();
  return r;
}

/// Fixed points of T^n by solving each of its 2^n linear branches.
inline std::set<mpq_class> tent_fixed_points(unsigned n) {
  std::set<mpq_class> out;
  const mpz_class m = mpz_class(1) << n;
  for (mpz_class k = 0; k < m; ++k) {
    // On [k/m, (k+1)/m]: T^n(x) = m x - k for even k, k + 1 - m x for odd k.
    mpq_class x = (k % 2 == 0) ? mpq_class(k, m - 1) : mpq_class(k + 1, m + 1);
    x.canonicalize();
    if (x >= mpq_class(k, m) && x <= mpq_class(k + 1, m)) out.insert(x);
  }
  return out;
}

/// Points of period dividing n for the baker map: k/(2^n - 1) and 1.
inline std::set<mpq_class> baker_periodic_points(unsigned n) {
  std::set<mpq_class> out;
  const mpz_class d = (mpz_class(1) << n) - 1;
  for (mpz_class k = 0; k < d; ++k) {
    mpq_class x(k, d);
    x.canonicalize();
    out.insert(x);
  }
  out.insert(mpq_class(1));
  return out;
}

/// ψ0 generated by listing words, for window scans.
inline Bits psi0(std::size_t n) {
  Bits out;
  for (unsigned len = 1; out.size() < n; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len) && out.size() < n; ++v) {
      for (unsigned i = 0; i < len && out.size() < n; ++i) out.push_back((v >> (len - 1 - i)) & 1U);
    }
  }
  return out;
}

/// Seeded source of test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

  Bits bits(std::size_t n) {
    Bits out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(below(2));
    return out;
  }

  /// p/q in [0, 1] with 1 <= q <= max_den.
  Rational unit_rational(std::uint64_t max_den) {
    const std::uint64_t den = 1 + below(max_den);
    const std::uint64_t num = below(den + 1);
    return Rational(num, den);
  }

  Word word(std::size_t max_pre, std::size_t max_period) {
    Bits pre = bits(below(max_pre + 1));
    Bits period = bits(1 + below(max_period));
    return Word(std::move(pre), std::move(period));
  }

 private:
  std::mt19937_64 rng_;
};

/// 1000 rationals with denominator <= 10^6 from a fixed seed.
inline std::vector<Rational> random_sample(std::uint64_t seed = 20240611, std::size_t n = 1000) {
  Gen g(seed);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(g.unit_rational(1'000'000));
  return out;
}

inline std::vector<Rational> dyadic_grid(unsigned exponent) {
  std::vector<Rational> out;
  for (std::uint64_t k = 0; k <= (std::uint64_t{1} << exponent); ++k) out.push_back(Rational::dyadic(k, exponent));
  return out;
}

}  // namespace oracle
