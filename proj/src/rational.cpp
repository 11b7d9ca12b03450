#include "symchaos/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace symchaos {

namespace {

mpz_class from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::uint64_t integer) : value_(from_u64(integer)) {}

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(from_u64(num), from_u64(den));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) < 0) throw std::domain_error("negative rational: " + value_.get_str());
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "', expected p/q");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::dyadic(std::uint64_t num, unsigned exponent) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  mpq_class q(from_u64(num), den);
  q.canonicalize();
  return Rational(std::move(q));
}

bool Rational::is_dyadic() const {
  const mpz_class& den = value_.get_den();
  return mpz_popcount(den.get_mpz_t()) == 1;
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

Rational minus(const Rational& lhs, const Rational& rhs) {
  if (lhs < rhs) {
    throw std::domain_error("negative difference " + lhs.to_string() + " - " + rhs.to_string());
  }
  return Rational(mpq_class(lhs.value_ - rhs.value_));
}

Rational abs_diff(const Rational& lhs, const Rational& rhs) {
  return lhs < rhs ? minus(rhs, lhs) : minus(lhs, rhs);
}

}  // namespace symchaos
