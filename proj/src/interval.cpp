#include "symchaos/interval.hpp"

#include <cassert>
#include <stdexcept>

namespace symchaos {

UnitPoint::UnitPoint(Rational value) : value_(std::move(value)) {
  if (!value_.in_unit_interval()) {
    throw std::domain_error(value_.to_string() + " is outside [0, 1]");
  }
}

Fiber IntervalCodec::encode(const UnitPoint& y) const { return Fiber(bits_of(y.value())); }

UnitPoint IntervalCodec::decode(const Word& w) const { return UnitPoint(word_value(w)); }

Fiber interval_fiber(const UnitPoint& y) { return IntervalCodec{}.encode(y); }

UnitPoint tent(const UnitPoint& y) {
  static const Rational half(1, 2);
  if (y.value() <= half) return UnitPoint(y.value() * 2);
  return UnitPoint(minus(Rational(1), y.value()) * 2);
}

UnitPoint baker(const UnitPoint& y) {
  static const Rational half(1, 2);
  if (y.value() <= half) return UnitPoint(y.value() * 2);
  return UnitPoint(minus(y.value() * 2, Rational(1)));
}

const IntervalSystem& tent_system() {
  static const IntervalSystem sys(SymbolicMap::c_map, IntervalCodec{},
                                  OverridePolicy<UnitPoint>::identity());
  return sys;
}

const IntervalSystem& baker_system() {
  static const IntervalSystem sys(SymbolicMap::shift, IntervalCodec{},
                                  OverridePolicy<UnitPoint>::designated(UnitPoint(Rational(1))));
  return sys;
}

UnitPoint induced_tent(const UnitPoint& y) {
  UnitPoint out = tent_system().apply(y);
  assert(out == tent(y));
  return out;
}

UnitPoint induced_baker(const UnitPoint& y) {
  UnitPoint out = baker_system().apply(y);
  assert(out == baker(y));
  return out;
}

UnitPoint conjugate_via_r(const UnitPoint& y) {
  return UnitPoint(word_value(r_map(bits_of(y.value()).front())));
}

}  // namespace symchaos
