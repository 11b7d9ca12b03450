#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symchaos/graph.hpp"
#include "symchaos/interval.hpp"
#include "symchaos/parallel.hpp"
#include "symchaos/stream_word.hpp"

namespace symchaos {

/// (arc, t) with t in [0, 1]; arcs are 1-based.
struct ArcCoordinate {
  std::size_t arc;
  Rational t;
};

/// Enclosure of a stream word's point: arc plus [lo, hi] on it.
struct ArcEnclosure {
  std::size_t arc;
  Rational lo;
  Rational hi;
};

/// A dynamical system as the verifier sees it: a space built from arcs, a
/// map F on its points, and, when it was induced from a symbolic map, the
/// symbolic side needed for projections and commute checks.
///
/// Every space is presented as a graph. The interval [0, 1] is one arc
/// from node "0" to node "1".
class ChaosSystem {
 public:
  virtual ~ChaosSystem() = default;

  virtual std::string id() const = 0;
  virtual std::size_t arc_count() const = 0;
  virtual std::string arc_name(std::size_t arc) const = 0;
  /// Normalizes t = 0 and t = 1 to nodes.
  virtual GraphPoint point_on_arc(std::size_t arc, const Rational& t) const = 0;
  /// Every (arc, t) naming this point; several for a node.
  virtual std::vector<ArcCoordinate> coordinates(const GraphPoint& p) const = 0;
  virtual GraphPoint step(const GraphPoint& p) const = 0;
  virtual Rational distance(const GraphPoint& a, const GraphPoint& b) const = 0;
  virtual std::string describe(const GraphPoint& p) const = 0;

  virtual bool symbolic() const { return false; }
  /// Point named by a word. Interval systems always use the binary
  /// valuation, so the controls project too.
  virtual GraphPoint project(const Word& w) const;
  /// Orbit start whose symbolic orbit is dense.
  virtual StreamWord dense_stream() const;
  virtual ArcEnclosure enclose(const StreamWord& sw, unsigned precision) const;
  /// H(π(w)) == π(G(w)).
  virtual bool commutes(const Word& w) const;
  virtual bool commutes(const StreamWord& sw) const;
  /// Whether (*) fails on the fiber containing w.
  virtual bool violates(const Word& w) const;
};

/// An interval map; symbolic when `induced` is given.
class IntervalChaosSystem final : public ChaosSystem {
 public:
  using Map = std::function<UnitPoint(const UnitPoint&)>;

  IntervalChaosSystem(std::string id, Map map, const IntervalSystem* induced = nullptr);

  std::string id() const override { return id_; }
  std::size_t arc_count() const override { return 1; }
  std::string arc_name(std::size_t) const override { return "I"; }
  GraphPoint point_on_arc(std::size_t arc, const Rational& t) const override;
  std::vector<ArcCoordinate> coordinates(const GraphPoint& p) const override;
  GraphPoint step(const GraphPoint& p) const override;
  Rational distance(const GraphPoint& a, const GraphPoint& b) const override;
  std::string describe(const GraphPoint& p) const override;

  bool symbolic() const override { return induced_ != nullptr; }
  GraphPoint project(const Word& w) const override;
  StreamWord dense_stream() const override;
  ArcEnclosure enclose(const StreamWord& sw, unsigned precision) const override;
  bool commutes(const Word& w) const override;
  bool commutes(const StreamWord& sw) const override;
  bool violates(const Word& w) const override;

  static UnitPoint to_unit(const GraphPoint& p);
  static GraphPoint from_unit(const UnitPoint& y);

 private:
  std::string id_;
  Map map_;
  const IntervalSystem* induced_;
};

class GraphChaosSystem final : public ChaosSystem {
 public:
  explicit GraphChaosSystem(std::shared_ptr<const GraphSystem> sys, std::string id = "graph");

  const GraphSystem& graph() const { return *sys_; }

  std::string id() const override { return id_; }
  std::size_t arc_count() const override { return sys_->spec().arc_count(); }
  std::string arc_name(std::size_t arc) const override { return sys_->spec().arc(arc).id; }
  GraphPoint point_on_arc(std::size_t arc, const Rational& t) const override;
  std::vector<ArcCoordinate> coordinates(const GraphPoint& p) const override;
  GraphPoint step(const GraphPoint& p) const override;
  Rational distance(const GraphPoint& a, const GraphPoint& b) const override;
  std::string describe(const GraphPoint& p) const override;

  bool symbolic() const override { return true; }
  GraphPoint project(const Word& w) const override;
  StreamWord dense_stream() const override { return dense_word(); }
  ArcEnclosure enclose(const StreamWord& sw, unsigned precision) const override;
  bool commutes(const Word& w) const override;
  bool commutes(const StreamWord& sw) const override;
  bool violates(const Word& w) const override;

 private:
  std::shared_ptr<const GraphSystem> sys_;
  std::string id_;
};

std::unique_ptr<ChaosSystem> make_tent_chaos_system();
std::unique_ptr<ChaosSystem> make_baker_chaos_system();
/// Negative controls without a symbolic side.
std::unique_ptr<ChaosSystem> make_identity_control();
std::unique_ptr<ChaosSystem> make_constant_control();
/// x -> x + 1/3 mod 1 on [0, 1), with 1 sent to 1/3.
std::unique_ptr<ChaosSystem> make_rotation_control();

struct ChaosReport {
  std::string system;
  std::string property;
  nlohmann::json params = nlohmann::json::object();
  bool pass = false;
  /// At most kMaxWitnesses are kept; witness_count has the full number.
  std::vector<std::string> witnesses;
  std::size_t witness_count = 0;
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  static constexpr std::size_t kMaxWitnesses = 32;

  void add_witness(std::string w);
  nlohmann::json to_json() const;
  static ChaosReport from_json(const nlohmann::json& j);
  /// JSON without elapsed_ms, for byte-stable comparison.
  nlohmann::json data_json() const;
};

ChaosReport periodic_density(const ChaosSystem& sys, unsigned max_period, unsigned resolution,
                             Execution exec = Execution::parallel);

ChaosReport dense_orbit_coverage(const ChaosSystem& sys, std::size_t steps, unsigned resolution,
                                 Execution exec = Execution::parallel);

ChaosReport transitivity_witness(const ChaosSystem& sys, unsigned resolution, unsigned horizon,
                                 Execution exec = Execution::parallel);

ChaosReport sensitivity_probe(const ChaosSystem& sys, const Rational& eta, const Rational& delta,
                              std::size_t grid, unsigned horizon,
                              Execution exec = Execution::parallel);

ChaosReport commute_check(const ChaosSystem& sys, unsigned max_period, std::size_t orbit_steps,
                          Execution exec = Execution::parallel);

}  // namespace symchaos
