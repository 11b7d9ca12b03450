#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "symchaos/decomposition.hpp"
#include "symchaos/rational.hpp"

namespace symchaos {

struct Arc {
  std::string id;
  std::string tail;  // h_i(0)
  std::string head;  // h_i(1)
};

/// A finite graph as a union of arcs E_1..E_r. Arcs are numbered from 1 in
/// declaration order. Loops and disconnected graphs are allowed.
class GraphSpec {
 public:
  /// Throws std::invalid_argument on duplicate ids, unknown endpoints, no
  /// arcs, or a declared node that no arc touches.
  GraphSpec(std::vector<std::string> nodes, std::vector<Arc> arcs);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t arc_count() const { return arcs_.size(); }
  /// 1-based.
  const Arc& arc(std::size_t i) const { return arcs_.at(i - 1); }
  std::optional<std::size_t> arc_index(std::string_view id) const;
  bool has_node(std::string_view id) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<Arc> arcs_;
};

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Line-oriented DSL: `# comment`, `node <id>`, `arc <id> <tail> <head>`.
GraphSpec parse_graph(std::string_view text);
GraphSpec load_graph(const std::filesystem::path& path);

/// A point of the graph: a node, or an arc parameter strictly inside (0, 1).
class GraphPoint {
 public:
  static GraphPoint node(std::string id) { return GraphPoint(Node{std::move(id)}); }
  /// Throws std::domain_error unless 0 < t < 1.
  static GraphPoint interior(std::size_t arc, Rational t);
  /// h_arc(t), with t = 0 and t = 1 collapsed to the endpoint nodes.
  static GraphPoint on_arc(const GraphSpec& spec, std::size_t arc, Rational t);

  bool is_node() const { return std::holds_alternative<Node>(v_); }
  const std::string& node_id() const { return std::get<Node>(v_).id; }
  std::size_t arc() const { return std::get<Interior>(v_).arc; }
  const Rational& t() const { return std::get<Interior>(v_).t; }

  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;

 private:
  struct Interior {
    std::size_t arc;
    Rational t;
    friend bool operator==(const Interior&, const Interior&) = default;
  };
  struct Node {
    std::string id;
    friend bool operator==(const Node&, const Node&) = default;
  };
  explicit GraphPoint(std::variant<Interior, Node> v) : v_(std::move(v)) {}

  std::variant<Interior, Node> v_;
};

/// Prefix code assigning arc i the cylinder of P(i): P(i) = 1^(i-1) 0 for
/// i < r, P(r) = 1^(r-1).
class AddressCodec {
 public:
  explicit AddressCodec(std::size_t arc_count);

  std::size_t arc_count() const { return prefixes_.size(); }
  const Bits& prefix(std::size_t arc) const { return prefixes_.at(arc - 1); }
  /// Arc whose cylinder contains a word starting with these bits. Needs at
  /// least min(r - 1, leading ones + 1) bits.
  std::size_t arc_of(const Word& w) const;
  std::size_t arc_of(const Bits& leading) const;

 private:
  std::vector<Bits> prefixes_;
};

/// Fibers of the address map over a GraphSpec.
class GraphCodec {
 public:
  using Point = GraphPoint;

  explicit GraphCodec(std::shared_ptr<const GraphSpec> spec);

  const GraphSpec& spec() const { return *spec_; }
  const AddressCodec& address() const { return address_; }

  Fiber encode(const GraphPoint& p) const;
  GraphPoint decode(const Word& w) const;
  /// `ARC:p/q` or `node:ID`.
  std::string describe(const GraphPoint& p) const;

 private:
  std::shared_ptr<const GraphSpec> spec_;
  AddressCodec address_;
};

/// The chaotic map F on a finite graph: S induced on fibers, with every
/// member of D' held fixed.
class GraphSystem {
 public:
  explicit GraphSystem(GraphSpec spec);

  const GraphSpec& spec() const { return induced_.codec().spec(); }
  const GraphCodec& codec() const { return induced_.codec(); }
  const InducedSystem<GraphCodec>& induced() const { return induced_; }

 private:
  static std::vector<GraphPoint> compute_exceptional(const GraphSpec& spec);

  InducedSystem<GraphCodec> induced_;
};

Fiber encode_point(const GraphSystem& sys, const GraphPoint& p);
GraphPoint decode_word(const GraphSystem& sys, const Word& w);
GraphPoint graph_map(const GraphSystem& sys, const GraphPoint& p);
/// All nodes, then the midpoint of arc 1, then the midpoint of arc r
/// (a single midpoint when r = 1).
std::vector<GraphPoint> exceptional_points(const GraphSystem& sys);
std::vector<GraphPoint> graph_orbit(const GraphSystem& sys, const GraphPoint& p, std::size_t n);
/// Hausdorff distance under d between the two fibers.
Rational graph_metric(const GraphSystem& sys, const GraphPoint& p, const GraphPoint& q);

/// Parses `ARC:p/q` (arc id or 1-based index) or `node:ID`.
GraphPoint parse_graph_point(const GraphSystem& sys, std::string_view text);

}  // namespace symchaos
