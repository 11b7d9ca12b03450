#pragma once

#include <string>

#include "symchaos/decomposition.hpp"
#include "symchaos/rational.hpp"

namespace symchaos {

/// A rational point of [0, 1].
class UnitPoint {
 public:
  /// Throws std::domain_error outside [0, 1].
  explicit UnitPoint(Rational value);
  static UnitPoint parse(std::string_view text) { return UnitPoint(Rational::parse(text)); }

  const Rational& value() const { return value_; }

  friend bool operator==(const UnitPoint&, const UnitPoint&) = default;
  friend auto operator<=>(const UnitPoint&, const UnitPoint&) = default;

 private:
  Rational value_;
};

/// f: {0,1}^N -> [0,1], the binary valuation, seen through its fibers.
struct IntervalCodec {
  using Point = UnitPoint;

  Fiber encode(const UnitPoint& y) const;
  UnitPoint decode(const Word& w) const;
  std::string describe(const UnitPoint& y) const { return y.value().to_string(); }
};

using IntervalSystem = InducedSystem<IntervalCodec>;

Fiber interval_fiber(const UnitPoint& y);

/// T(x) = 2x on [0, 1/2], 2(1 - x) on [1/2, 1].
UnitPoint tent(const UnitPoint& y);
/// B(x) = 2x on [0, 1/2], 2x - 1 on (1/2, 1]; B(1/2) = 1.
UnitPoint baker(const UnitPoint& y);

/// C acting on fibers of f; (*) holds everywhere.
const IntervalSystem& tent_system();
/// S acting on fibers of f, with f^{-1}(1/2) sent to f^{-1}(1).
const IntervalSystem& baker_system();

UnitPoint induced_tent(const UnitPoint& y);
UnitPoint induced_baker(const UnitPoint& y);

/// Value of r_map applied to the first expansion of y (the ...10^∞ one for
/// dyadic y).
UnitPoint conjugate_via_r(const UnitPoint& y);

}  // namespace symchaos
