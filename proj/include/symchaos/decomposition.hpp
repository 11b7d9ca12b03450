#pragma once

#include <algorithm>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symchaos/fiber.hpp"
#include "symchaos/stream_word.hpp"
#include "symchaos/symbolic.hpp"
#include "symchaos/word.hpp"

namespace symchaos {

/// Maps a space point to its fiber and any constituent word back to the
/// point it represents.
template <class C>
concept FiberCodec = requires(const C& c, const Word& w, const typename C::Point& p) {
  { c.encode(p) } -> std::same_as<Fiber>;
  { c.decode(w) } -> std::convertible_to<typename C::Point>;
  { c.describe(p) } -> std::convertible_to<std::string>;
};

enum class SymbolicMap : std::uint8_t { shift, c_map };

inline Word apply_map(SymbolicMap map, const Word& w) {
  return map == SymbolicMap::shift ? shift_map(w) : c_map(w);
}

inline const char* map_name(SymbolicMap map) { return map == SymbolicMap::shift ? "S" : "C"; }

/// What the induced map does on a fiber where condition (*) fails.
template <class Point>
struct OverridePolicy {
  enum class Kind : std::uint8_t { identity, designated };
  Kind kind = Kind::identity;
  std::optional<Point> target;

  static OverridePolicy identity() { return {}; }
  static OverridePolicy designated(Point p) { return {Kind::designated, std::move(p)}; }
};

template <class Point>
struct Image {
  Word word;
  Point point;
};

/// Result of checking (*) on one fiber. `images` holds the image of every
/// member in member order; `target` is set iff all images decode to the
/// same point.
template <class Point>
struct StarOutcome {
  std::vector<Image<Point>> images;
  std::optional<Fiber> target;

  bool single() const { return target.has_value(); }
  bool violation() const { return !target.has_value(); }
};

/// The map H on the decomposition induced by a symbolic map, patched on
/// exceptional fibers.
///
/// The override fires on every fiber where (*) fails, and additionally on
/// every point listed in `exceptional` even if (*) happens to hold there.
template <FiberCodec Codec>
class InducedSystem {
 public:
  using Point = typename Codec::Point;

  InducedSystem(SymbolicMap map, Codec codec, OverridePolicy<Point> policy,
                std::vector<Point> exceptional = {})
      : map_(map), codec_(std::move(codec)), policy_(std::move(policy)),
        exceptional_(std::move(exceptional)) {
    if (policy_.kind == OverridePolicy<Point>::Kind::designated && !policy_.target) {
      throw std::invalid_argument("designated override needs a target point");
    }
  }

  SymbolicMap map() const { return map_; }
  const Codec& codec() const { return codec_; }
  const OverridePolicy<Point>& policy() const { return policy_; }
  const std::vector<Point>& exceptional() const { return exceptional_; }

  bool declared_exceptional(const Point& p) const {
    return std::find(exceptional_.begin(), exceptional_.end(), p) != exceptional_.end();
  }

  StarOutcome<Point> star_check(const Fiber& fib) const {
    StarOutcome<Point> out;
    out.images.reserve(fib.size());
    for (const Word& w : fib) {
      Word image = apply_map(map_, w);
      Point p = codec_.decode(image);
      out.images.push_back({std::move(image), std::move(p)});
    }
    const Point& first = out.images.front().point;
    const bool agree = std::all_of(out.images.begin(), out.images.end(),
                                   [&](const Image<Point>& im) { return im.point == first; });
    if (agree) out.target = codec_.encode(first);
    return out;
  }

  Fiber induced_apply(const Fiber& fib) const {
    if (!exceptional_.empty() && declared_exceptional(codec_.decode(fib.front()))) {
      return override_of(fib);
    }
    StarOutcome<Point> outcome = star_check(fib);
    if (outcome.single()) return std::move(*outcome.target);
    return override_of(fib);
  }

  /// F = h^{-1} ∘ H ∘ h on space points.
  Point apply(const Point& p) const { return codec_.decode(induced_apply(codec_.encode(p)).front()); }

  /// H(π(w)) == π(G(w)).
  bool semiconjugacy_check(const Word& w) const {
    const Fiber lhs = induced_apply(codec_.encode(codec_.decode(w)));
    const Fiber rhs = codec_.encode(codec_.decode(apply_map(map_, w)));
    return lhs == rhs;
  }

  /// For a stream word the relation is checked on the eventually periodic
  /// word that agrees with it on 2p bits (first p as preperiod, next p as
  /// period). If that approximant fails, p doubles up to `max_precision`,
  /// so only a failure that persists at every precision is reported.
  bool semiconjugacy_check(const StreamWord& sw, unsigned precision = 64,
                           unsigned max_precision = 1024) const {
    for (unsigned p = std::max(1U, precision); p <= max_precision; p *= 2) {
      if (semiconjugacy_check(stream_approximant(sw, p))) return true;
    }
    return false;
  }

  static Word stream_approximant(const StreamWord& sw, unsigned p) {
    Bits bits = stream_prefix(sw, 2 * static_cast<std::size_t>(p));
    Bits pre(bits.begin(), bits.begin() + p);
    Bits period(bits.begin() + p, bits.end());
    return Word(std::move(pre), std::move(period));
  }

 private:
  Fiber override_of(const Fiber& fib) const {
    if (policy_.kind == OverridePolicy<Point>::Kind::identity) return fib;
    return codec_.encode(*policy_.target);
  }

  SymbolicMap map_;
  Codec codec_;
  OverridePolicy<Point> policy_;
  std::vector<Point> exceptional_;
};

/// {"kind": "single"|"violation", "images": [{"word": "pre:period", "point": ...}]}
template <FiberCodec Codec>
nlohmann::json star_outcome_json(const StarOutcome<typename Codec::Point>& outcome,
                                 const Codec& codec) {
  nlohmann::json images = nlohmann::json::array();
  for (const auto& im : outcome.images) {
    images.push_back({{"word", im.word.to_string()}, {"point", codec.describe(im.point)}});
  }
  nlohmann::json j{{"kind", outcome.single() ? "single" : "violation"}, {"images", images}};
  if (outcome.single()) j["target"] = outcome.target->to_string();
  return j;
}

}  // namespace symchaos
