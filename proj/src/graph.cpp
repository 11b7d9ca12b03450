#include "symchaos/graph.hpp"

#include <algorithm>
#include <set>

namespace symchaos {

GraphSpec::GraphSpec(std::vector<std::string> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  if (arcs_.empty()) throw std::invalid_argument("graph has no arcs");
  std::set<std::string_view> seen;
  for (const auto& n : nodes_) {
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate node id '" + n + "'");
  }
  std::set<std::string_view> arc_ids;
  std::set<std::string_view> touched;
  for (const auto& a : arcs_) {
    if (!arc_ids.insert(a.id).second) throw std::invalid_argument("duplicate arc id '" + a.id + "'");
    for (const auto* end : {&a.tail, &a.head}) {
      if (!seen.contains(*end)) {
        throw std::invalid_argument("arc '" + a.id + "' names unknown node '" + *end + "'");
      }
      touched.insert(*end);
    }
  }
  for (const auto& n : nodes_) {
    if (!touched.contains(n)) throw std::invalid_argument("node '" + n + "' is not on any arc");
  }
}

std::optional<std::size_t> GraphSpec::arc_index(std::string_view id) const {
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (arcs_[i].id == id) return i + 1;
  }
  return std::nullopt;
}

bool GraphSpec::has_node(std::string_view id) const {
  return std::find(nodes_.begin(), nodes_.end(), id) != nodes_.end();
}

GraphPoint GraphPoint::interior(std::size_t arc, Rational t) {
  if (t.is_zero() || !(t < Rational(1))) {
    throw std::domain_error("interior parameter " + t.to_string() + " not strictly inside (0, 1)");
  }
  return GraphPoint(Interior{arc, std::move(t)});
}

GraphPoint GraphPoint::on_arc(const GraphSpec& spec, std::size_t arc, Rational t) {
  if (arc == 0 || arc > spec.arc_count()) {
    throw std::out_of_range("arc index " + std::to_string(arc) + " out of range");
  }
  if (t.is_zero()) return node(spec.arc(arc).tail);
  if (t.is_one()) return node(spec.arc(arc).head);
  return interior(arc, std::move(t));
}

AddressCodec::AddressCodec(std::size_t arc_count) {
  if (arc_count == 0) throw std::invalid_argument("address codec needs at least one arc");
  prefixes_.reserve(arc_count);
  for (std::size_t i = 1; i <= arc_count; ++i) {
    Bits p(i - 1, 1);
    if (i < arc_count) p.push_back(0);
    prefixes_.push_back(std::move(p));
  }
}

std::size_t AddressCodec::arc_of(const Word& w) const {
  const std::size_t r = arc_count();
  std::size_t ones = 0;
  while (ones + 1 < r && w.bit(ones + 1) == 1) ++ones;
  return ones + 1;
}

std::size_t AddressCodec::arc_of(const Bits& leading) const {
  const std::size_t r = arc_count();
  std::size_t ones = 0;
  while (ones + 1 < r && ones < leading.size() && leading[ones] == 1) ++ones;
  if (ones + 1 < r && ones == leading.size()) {
    throw std::invalid_argument("too few bits to determine the arc");
  }
  return ones + 1;
}

GraphCodec::GraphCodec(std::shared_ptr<const GraphSpec> spec)
    : spec_(std::move(spec)), address_(spec_->arc_count()) {}

Fiber GraphCodec::encode(const GraphPoint& p) const {
  std::vector<Word> words;
  if (p.is_node()) {
    for (std::size_t i = 1; i <= spec_->arc_count(); ++i) {
      const Arc& a = spec_->arc(i);
      if (a.tail == p.node_id()) words.push_back(prepend(address_.prefix(i), Word::constant(0)));
      if (a.head == p.node_id()) words.push_back(prepend(address_.prefix(i), Word::constant(1)));
    }
    if (words.empty()) throw std::invalid_argument("unknown node '" + p.node_id() + "'");
  } else {
    for (const Word& e : bits_of(p.t())) words.push_back(prepend(address_.prefix(p.arc()), e));
  }
  return Fiber(std::move(words));
}

GraphPoint GraphCodec::decode(const Word& w) const {
  const std::size_t arc = address_.arc_of(w);
  const Word tail = drop_prefix(w, address_.prefix(arc).size());
  return GraphPoint::on_arc(*spec_, arc, word_value(tail));
}

std::string GraphCodec::describe(const GraphPoint& p) const {
  if (p.is_node()) return "node:" + p.node_id();
  return spec_->arc(p.arc()).id + ":" + p.t().to_string();
}

std::vector<GraphPoint> GraphSystem::compute_exceptional(const GraphSpec& spec) {
  std::vector<GraphPoint> out;
  for (const auto& n : spec.nodes()) out.push_back(GraphPoint::node(n));
  const Rational half(1, 2);
  out.push_back(GraphPoint::interior(1, half));
  if (spec.arc_count() > 1) out.push_back(GraphPoint::interior(spec.arc_count(), half));
  return out;
}

GraphSystem::GraphSystem(GraphSpec spec)
    : induced_(SymbolicMap::shift, GraphCodec(std::make_shared<const GraphSpec>(spec)),
               OverridePolicy<GraphPoint>::identity(), compute_exceptional(spec)) {}

Fiber encode_point(const GraphSystem& sys, const GraphPoint& p) { return sys.codec().encode(p); }

GraphPoint decode_word(const GraphSystem& sys, const Word& w) { return sys.codec().decode(w); }

GraphPoint graph_map(const GraphSystem& sys, const GraphPoint& p) { return sys.induced().apply(p); }

std::vector<GraphPoint> exceptional_points(const GraphSystem& sys) {
  return sys.induced().exceptional();
}

std::vector<GraphPoint> graph_orbit(const GraphSystem& sys, const GraphPoint& p, std::size_t n) {
  std::vector<GraphPoint> orbit;
  orbit.reserve(n + 1);
  orbit.push_back(p);
  for (std::size_t k = 0; k < n; ++k) orbit.push_back(graph_map(sys, orbit.back()));
  return orbit;
}

Rational graph_metric(const GraphSystem& sys, const GraphPoint& p, const GraphPoint& q) {
  if (p == q) return Rational(0);
  const Fiber a = encode_point(sys, p);
  const Fiber b = encode_point(sys, q);
  auto directed = [](const Fiber& from, const Fiber& to) {
    Rational worst(0);
    for (const Word& x : from) {
      std::optional<Rational> best;
      for (const Word& y : to) {
        Rational d = word_metric(x, y);
        if (!best || d < *best) best = std::move(d);
      }
      if (*best > worst) worst = std::move(*best);
    }
    return worst;
  };
  Rational ab = directed(a, b);
  Rational ba = directed(b, a);
  return ab < ba ? ba : ab;
}

GraphPoint parse_graph_point(const GraphSystem& sys, std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("malformed graph point '" + std::string(text) +
                                "', expected ARC:p/q or node:ID");
  }
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (head == "node") {
    if (!sys.spec().has_node(rest)) throw std::invalid_argument("unknown node '" + std::string(rest) + "'");
    return GraphPoint::node(std::string(rest));
  }
  std::optional<std::size_t> arc = sys.spec().arc_index(head);
  if (!arc && !head.empty() && std::all_of(head.begin(), head.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const std::size_t i = std::stoul(std::string(head));
    if (i >= 1 && i <= sys.spec().arc_count()) arc = i;
  }
  if (!arc) throw std::invalid_argument("unknown arc '" + std::string(head) + "'");
  Rational t = Rational::parse(rest);
  if (!t.in_unit_interval()) throw std::domain_error("arc parameter " + t.to_string() + " outside [0, 1]");
  return GraphPoint::on_arc(sys.spec(), *arc, std::move(t));
}

}  // namespace symchaos
