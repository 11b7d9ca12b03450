#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace symchaos {

/// Exact nonnegative rational, always kept in lowest terms.
///
/// Backed by a GMP rational. Subtraction is only offered as `abs_diff` and
/// the checked `minus`, so a value can never go negative.
class Rational {
 public:
  Rational() = default;
  Rational(std::uint64_t integer);  // NOLINT(google-explicit-constructor)
  Rational(std::uint64_t num, std::uint64_t den);
  explicit Rational(mpq_class value);

  /// Parses `p/q` or a bare integer `p`.
  static Rational parse(std::string_view text);
  /// num / 2^exponent.
  static Rational dyadic(std::uint64_t num, unsigned exponent);
  static Rational pow2_inverse(unsigned exponent) { return dyadic(1, exponent); }

  const mpq_class& get() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return cmp(value_, 1) == 0; }
  bool in_unit_interval() const { return cmp(value_, 1) <= 0; }
  /// True when the reduced denominator is a power of two.
  bool is_dyadic() const;

  std::string to_string() const;
  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  /// lhs - rhs; throws std::domain_error if the result would be negative.
  friend Rational minus(const Rational& lhs, const Rational& rhs);
  friend Rational abs_diff(const Rational& lhs, const Rational& rhs);

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

}  // namespace symchaos
