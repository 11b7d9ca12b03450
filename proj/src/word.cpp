#include "symchaos/word.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>

namespace symchaos {

namespace {

constexpr std::size_t kDefaultMaxBits = std::size_t{1} << 22;

// Length of the shortest block whose repetition yields `period`.
std::size_t primitive_length(const Bits& period) {
  const std::size_t n = period.size();
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && period[i] != period[k]) k = border[k - 1];
    if (period[i] == period[k]) ++k;
    border[i] = k;
  }
  const std::size_t p = n - border[n - 1];
  return n % p == 0 ? p : n;
}

// Number of trailing preperiod bits that are absorbed into the period.
std::size_t absorbable(const Bits& pre, const Bits& period) {
  const std::size_t m = pre.size();
  const std::size_t len = period.size();
  std::size_t k = 0;
  while (k < m && pre[m - 1 - k] == period[(len - 1 - (k % len))]) ++k;
  return k;
}

void check_binary(const Bits& bits) {
  for (auto b : bits) {
    if (b > 1) throw std::invalid_argument("word entries must be 0 or 1");
  }
}

}  // namespace

std::size_t max_word_bits() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("SYMCHAOS_MAX_BITS")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultMaxBits;
  }();
  return cap;
}

Word::Word(Trusted, Bits preperiod, Bits period)
    : pre_(std::move(preperiod)), period_(std::move(period)) {}

Word::Word(Bits preperiod, Bits period) {
  if (period.empty()) throw std::invalid_argument("word period must be nonempty");
  check_binary(preperiod);
  check_binary(period);
  if (preperiod.size() + period.size() > max_word_bits()) {
    throw std::length_error("word of " + std::to_string(preperiod.size() + period.size()) +
                            " bits exceeds SYMCHAOS_MAX_BITS");
  }

  const std::size_t p = primitive_length(period);
  period.resize(p);

  const std::size_t k = absorbable(preperiod, period);
  if (k > 0) {
    // Dropping k trailing preperiod bits rotates the period right by k.
    Bits rotated(p);
    for (std::size_t i = 0; i < p; ++i) rotated[i] = period[(i + p - (k % p)) % p];
    period = std::move(rotated);
    preperiod.resize(preperiod.size() - k);
  }
  pre_ = std::move(preperiod);
  period_ = std::move(period);
}

Word Word::from_canonical(Bits preperiod, Bits period) {
  assert(is_canonical(preperiod, period));
  return Word(Trusted{}, std::move(preperiod), std::move(period));
}

Word Word::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || text.find(':', colon + 1) != std::string_view::npos) {
    throw std::invalid_argument("malformed word '" + std::string(text) + "', expected pre:period");
  }
  auto to_bits = [&](std::string_view part) {
    Bits bits;
    bits.reserve(part.size());
    for (char c : part) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("malformed word '" + std::string(text) + "'");
      }
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return bits;
  };
  return Word(to_bits(text.substr(0, colon)), to_bits(text.substr(colon + 1)));
}

Bits Word::prefix(std::size_t n) const {
  Bits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = bit(i + 1);
  return out;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(pre_.size() + period_.size() + 1);
  for (auto b : pre_) s.push_back(static_cast<char>('0' + b));
  s.push_back(':');
  for (auto b : period_) s.push_back(static_cast<char>('0' + b));
  return s;
}

bool is_canonical(const Bits& preperiod, const Bits& period) {
  if (period.empty()) return false;
  for (auto b : preperiod) {
    if (b > 1) return false;
  }
  for (auto b : period) {
    if (b > 1) return false;
  }
  if (primitive_length(period) != period.size()) return false;
  return preperiod.empty() || preperiod.back() != period.back();
}

}  // namespace symchaos
