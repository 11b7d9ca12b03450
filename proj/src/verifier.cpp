#include "symchaos/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace symchaos {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// floor(t * 2^p); `exact` reports whether t * 2^p is an integer.
std::uint64_t scaled_floor(const Rational& t, unsigned p, bool& exact) {
  mpz_class num = t.numerator() << p;
  mpz_class q;
  mpz_class r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), t.denominator().get_mpz_t());
  exact = r == 0;
  return q.get_ui();
}

// Closed cells [j/2^p, (j+1)/2^p] containing t.
void closed_cells(const Rational& t, unsigned p, std::vector<std::uint64_t>& out) {
  const std::uint64_t cells = std::uint64_t{1} << p;
  bool exact = false;
  const std::uint64_t j = scaled_floor(t, p, exact);
  if (j < cells) out.push_back(j);
  if (exact && j > 0) out.push_back(j - 1);
}

// The open cell (j/2^p, (j+1)/2^p) containing t, if any.
std::optional<std::uint64_t> open_cell(const Rational& t, unsigned p) {
  bool exact = false;
  const std::uint64_t j = scaled_floor(t, p, exact);
  if (exact) return std::nullopt;
  return j;
}

std::string cell_name(const ChaosSystem& sys, std::size_t arc, std::uint64_t j, unsigned p) {
  const Rational lo = Rational::dyadic(j, p);
  const Rational hi = Rational::dyadic(j + 1, p);
  return sys.arc_name(arc) + "[" + lo.to_string() + "," + hi.to_string() + "]";
}

void require_symbolic(const ChaosSystem& sys) {
  if (!sys.symbolic()) {
    throw std::invalid_argument("system '" + sys.id() + "' has no symbolic representative");
  }
}

std::vector<Word> primitive_words_up_to(unsigned n) {
  std::vector<Word> words;
  for (unsigned k = 1; k <= n; ++k) {
    for_each_primitive_periodic_word(k, [&](const Word& w) { words.push_back(w); });
  }
  return words;
}

ChaosReport new_report(const ChaosSystem& sys, std::string property) {
  ChaosReport r;
  r.system = sys.id();
  r.property = std::move(property);
  return r;
}

}  // namespace

// ---- ChaosSystem defaults -------------------------------------------------

GraphPoint ChaosSystem::project(const Word&) const {
  throw std::invalid_argument("system '" + id() + "' has no projection from words");
}

StreamWord ChaosSystem::dense_stream() const {
  require_symbolic(*this);
  return dense_word();
}

ArcEnclosure ChaosSystem::enclose(const StreamWord&, unsigned) const {
  require_symbolic(*this);
  return {};
}

bool ChaosSystem::commutes(const Word&) const {
  require_symbolic(*this);
  return false;
}

bool ChaosSystem::commutes(const StreamWord&) const {
  require_symbolic(*this);
  return false;
}

bool ChaosSystem::violates(const Word&) const {
  require_symbolic(*this);
  return false;
}

// ---- interval systems -----------------------------------------------------

IntervalChaosSystem::IntervalChaosSystem(std::string id, Map map, const IntervalSystem* induced)
    : id_(std::move(id)), map_(std::move(map)), induced_(induced) {}

UnitPoint IntervalChaosSystem::to_unit(const GraphPoint& p) {
  if (p.is_node()) return UnitPoint(Rational(p.node_id() == "1" ? 1 : 0));
  return UnitPoint(p.t());
}

GraphPoint IntervalChaosSystem::from_unit(const UnitPoint& y) {
  if (y.value().is_zero()) return GraphPoint::node("0");
  if (y.value().is_one()) return GraphPoint::node("1");
  return GraphPoint::interior(1, y.value());
}

GraphPoint IntervalChaosSystem::point_on_arc(std::size_t, const Rational& t) const {
  return from_unit(UnitPoint(t));
}

std::vector<ArcCoordinate> IntervalChaosSystem::coordinates(const GraphPoint& p) const {
  return {{1, to_unit(p).value()}};
}

GraphPoint IntervalChaosSystem::step(const GraphPoint& p) const { return from_unit(map_(to_unit(p))); }

Rational IntervalChaosSystem::distance(const GraphPoint& a, const GraphPoint& b) const {
  return abs_diff(to_unit(a).value(), to_unit(b).value());
}

std::string IntervalChaosSystem::describe(const GraphPoint& p) const {
  return to_unit(p).value().to_string();
}

GraphPoint IntervalChaosSystem::project(const Word& w) const {
  return from_unit(IntervalCodec{}.decode(w));
}

StreamWord IntervalChaosSystem::dense_stream() const {
  require_symbolic(*this);
  return induced_->map() == SymbolicMap::shift ? dense_word() : dense_conjugate_word();
}

ArcEnclosure IntervalChaosSystem::enclose(const StreamWord& sw, unsigned precision) const {
  auto [lo, hi] = value_enclosure(sw, precision);
  return {1, std::move(lo), std::move(hi)};
}

bool IntervalChaosSystem::commutes(const Word& w) const {
  require_symbolic(*this);
  return induced_->semiconjugacy_check(w);
}

bool IntervalChaosSystem::commutes(const StreamWord& sw) const {
  require_symbolic(*this);
  return induced_->semiconjugacy_check(sw);
}

bool IntervalChaosSystem::violates(const Word& w) const {
  require_symbolic(*this);
  const auto& codec = induced_->codec();
  return induced_->star_check(codec.encode(codec.decode(w))).violation();
}

// ---- graph systems --------------------------------------------------------

GraphChaosSystem::GraphChaosSystem(std::shared_ptr<const GraphSystem> sys, std::string id)
    : sys_(std::move(sys)), id_(std::move(id)) {}

GraphPoint GraphChaosSystem::point_on_arc(std::size_t arc, const Rational& t) const {
  return GraphPoint::on_arc(sys_->spec(), arc, t);
}

std::vector<ArcCoordinate> GraphChaosSystem::coordinates(const GraphPoint& p) const {
  if (!p.is_node()) return {{p.arc(), p.t()}};
  std::vector<ArcCoordinate> out;
  for (std::size_t i = 1; i <= sys_->spec().arc_count(); ++i) {
    const Arc& a = sys_->spec().arc(i);
    if (a.tail == p.node_id()) out.push_back({i, Rational(0)});
    if (a.head == p.node_id()) out.push_back({i, Rational(1)});
  }
  return out;
}

GraphPoint GraphChaosSystem::step(const GraphPoint& p) const { return graph_map(*sys_, p); }

Rational GraphChaosSystem::distance(const GraphPoint& a, const GraphPoint& b) const {
  return graph_metric(*sys_, a, b);
}

std::string GraphChaosSystem::describe(const GraphPoint& p) const { return sys_->codec().describe(p); }

GraphPoint GraphChaosSystem::project(const Word& w) const { return decode_word(*sys_, w); }

ArcEnclosure GraphChaosSystem::enclose(const StreamWord& sw, unsigned precision) const {
  const AddressCodec& address = sys_->codec().address();
  const Bits lead = stream_prefix(sw, address.arc_count());
  const std::size_t arc = address.arc_of(lead);
  const std::size_t skip = address.prefix(arc).size();
  const Bits bits = stream_prefix(sw, skip + precision);
  mpz_class num = 0;
  for (std::size_t i = skip; i < bits.size(); ++i) num = (num << 1) + bits[i];
  Rational lo(mpq_class(num, mpz_class(1) << precision));
  Rational hi = lo + Rational::pow2_inverse(precision);
  return {arc, std::move(lo), std::move(hi)};
}

bool GraphChaosSystem::commutes(const Word& w) const { return sys_->induced().semiconjugacy_check(w); }

bool GraphChaosSystem::commutes(const StreamWord& sw) const {
  return sys_->induced().semiconjugacy_check(sw);
}

bool GraphChaosSystem::violates(const Word& w) const {
  const auto& codec = sys_->codec();
  return sys_->induced().star_check(codec.encode(codec.decode(w))).violation();
}

// ---- factories ------------------------------------------------------------

std::unique_ptr<ChaosSystem> make_tent_chaos_system() {
  return std::make_unique<IntervalChaosSystem>("tent", induced_tent, &tent_system());
}

std::unique_ptr<ChaosSystem> make_baker_chaos_system() {
  return std::make_unique<IntervalChaosSystem>("baker", induced_baker, &baker_system());
}

std::unique_ptr<ChaosSystem> make_identity_control() {
  return std::make_unique<IntervalChaosSystem>("identity", [](const UnitPoint& y) { return y; });
}

std::unique_ptr<ChaosSystem> make_constant_control() {
  return std::make_unique<IntervalChaosSystem>("constant",
                                               [](const UnitPoint&) { return UnitPoint(Rational(0)); });
}

std::unique_ptr<ChaosSystem> make_rotation_control() {
  return std::make_unique<IntervalChaosSystem>("rotation", [](const UnitPoint& y) {
    static const Rational third(1, 3);
    static const Rational two_thirds(2, 3);
    if (y.value().is_one()) return UnitPoint(third);
    if (y.value() < two_thirds) return UnitPoint(y.value() + third);
    return UnitPoint(minus(y.value(), two_thirds));
  });
}

// ---- reports --------------------------------------------------------------

void ChaosReport::add_witness(std::string w) {
  ++witness_count;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

nlohmann::json ChaosReport::data_json() const {
  return {{"system", system},
          {"property", property},
          {"params", params},
          {"verdict", pass ? "pass" : "fail"},
          {"witnesses", witnesses},
          {"witness_count", witness_count},
          {"notes", notes}};
}

nlohmann::json ChaosReport::to_json() const {
  nlohmann::json j = data_json();
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

ChaosReport ChaosReport::from_json(const nlohmann::json& j) {
  ChaosReport r;
  r.system = j.at("system").get<std::string>();
  r.property = j.at("property").get<std::string>();
  r.params = j.at("params");
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict != "pass" && verdict != "fail") throw std::invalid_argument("bad verdict '" + verdict + "'");
  r.pass = verdict == "pass";
  r.witnesses = j.at("witnesses").get<std::vector<std::string>>();
  r.witness_count = j.value("witness_count", r.witnesses.size());
  r.notes = j.value("notes", std::vector<std::string>{});
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  if (r.pass != r.witnesses.empty()) throw std::invalid_argument("verdict disagrees with witnesses");
  return r;
}

// ---- periodic density -----------------------------------------------------

ChaosReport periodic_density(const ChaosSystem& sys, unsigned max_period, unsigned resolution,
                             Execution exec) {
  if (max_period == 0 || max_period > 24) throw std::out_of_range("max_period must be in 1..24");
  if (resolution == 0 || resolution > 16) throw std::out_of_range("resolution must be in 1..16");
  const auto start = Clock::now();

  const std::vector<Word> words = primitive_words_up_to(max_period);
  // Per word: is its projection F-periodic with period dividing its own.
  std::vector<std::optional<GraphPoint>> kept(words.size());
  for_each_index(exec, words.size(), [&](std::size_t i) {
    const Word& w = words[i];
    const GraphPoint x = sys.project(w);
    GraphPoint y = x;
    for (std::size_t k = 0; k < w.period().size(); ++k) y = sys.step(y);
    if (y == x) kept[i] = x;
  });

  const std::uint64_t cells = std::uint64_t{1} << resolution;
  std::vector<std::uint8_t> covered(sys.arc_count() * cells, 0);
  std::size_t kept_count = 0;
  std::vector<std::uint64_t> hits;
  for (const auto& x : kept) {
    if (!x) continue;
    ++kept_count;
    for (const auto& c : sys.coordinates(*x)) {
      hits.clear();
      closed_cells(c.t, resolution, hits);
      for (auto j : hits) covered[(c.arc - 1) * cells + j] = 1;
    }
  }

  ChaosReport report = new_report(sys, "periodic-density");
  std::size_t covered_count = 0;
  for (std::size_t arc = 1; arc <= sys.arc_count(); ++arc) {
    for (std::uint64_t j = 0; j < cells; ++j) {
      if (covered[(arc - 1) * cells + j]) {
        ++covered_count;
      } else {
        report.add_witness("uncovered cell " + cell_name(sys, arc, j, resolution));
      }
    }
  }
  report.params = {{"max_period", max_period},
                   {"resolution", resolution},
                   {"symbolic_words", words.size()},
                   {"periodic_points", kept_count},
                   {"cells_covered", covered_count},
                   {"cells_total", covered.size()}};
  report.pass = report.witness_count == 0;
  report.notes.push_back("closed dyadic cells of width 2^-resolution on every arc");
  report.elapsed_ms = ms_since(start);
  return report;
}

// ---- dense orbit ----------------------------------------------------------

ChaosReport dense_orbit_coverage(const ChaosSystem& sys, std::size_t steps, unsigned resolution,
                                 Execution exec) {
  if (steps > 1'000'000) throw std::out_of_range("steps must be at most 10^6");
  if (resolution == 0 || resolution > 16) throw std::out_of_range("resolution must be in 1..16");
  require_symbolic(sys);
  const auto start = Clock::now();

  const std::uint64_t cells = std::uint64_t{1} << resolution;
  const StreamWord origin = sys.dense_stream();
  const unsigned precision = resolution + 2;

  // Cell marked by each orbit step, or none if the enclosure straddles.
  constexpr std::uint64_t kNone = ~std::uint64_t{0};
  std::vector<std::uint64_t> mark(steps + 1, kNone);
  for_each_index(exec, steps + 1, [&](std::size_t n) {
    const ArcEnclosure e = sys.enclose(stream_advance(origin, n), precision);
    bool exact = false;
    const std::uint64_t j = scaled_floor(e.lo, resolution, exact);
    if (j >= cells) return;
    if (e.hi <= Rational::dyadic(j + 1, resolution)) mark[n] = (e.arc - 1) * cells + j;
  });

  std::vector<std::size_t> first_hit(sys.arc_count() * cells, kNone);
  for (std::size_t n = 0; n <= steps; ++n) {
    if (mark[n] != kNone && first_hit[mark[n]] == kNone) first_hit[mark[n]] = n;
  }

  ChaosReport report = new_report(sys, "dense-orbit");
  std::size_t covered = 0;
  std::size_t last = 0;
  for (std::size_t arc = 1; arc <= sys.arc_count(); ++arc) {
    for (std::uint64_t j = 0; j < cells; ++j) {
      const std::size_t n = first_hit[(arc - 1) * cells + j];
      if (n == kNone) {
        report.add_witness("unvisited cell " + cell_name(sys, arc, j, resolution));
      } else {
        ++covered;
        last = std::max(last, n);
      }
    }
  }
  report.params = {{"steps", steps},
                   {"resolution", resolution},
                   {"precision", precision},
                   {"cells_covered", covered},
                   {"cells_total", first_hit.size()}};
  if (covered == first_hit.size()) report.params["covered_by_step"] = last;
  report.pass = report.witness_count == 0;
  report.notes.push_back("orbit of the dense symbolic word, decoded through value enclosures");
  if (sys.arc_count() > 1 || dynamic_cast<const GraphChaosSystem*>(&sys) != nullptr) {
    report.notes.push_back("a dense orbit also evidences topological transitivity on this space");
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

// ---- transitivity ---------------------------------------------------------

ChaosReport transitivity_witness(const ChaosSystem& sys, unsigned resolution, unsigned horizon,
                                 Execution exec) {
  if (resolution == 0 || resolution > 8) throw std::out_of_range("resolution must be in 1..8");
  if (horizon == 0 || horizon > 4096) throw std::out_of_range("horizon must be in 1..4096");
  const auto start = Clock::now();

  const std::uint64_t cells = std::uint64_t{1} << resolution;
  const std::size_t total = sys.arc_count() * cells;
  const unsigned max_depth = std::min(12U, horizon + resolution);

  // reached[u][v]: some dyadic in open cell u lands in open cell v.
  std::vector<std::vector<std::uint8_t>> reached(total, std::vector<std::uint8_t>(total, 0));
  std::vector<unsigned> depth_used(total, 0);

  for_each_index(exec, total, [&](std::size_t u) {
    const std::size_t arc = u / cells + 1;
    const std::uint64_t j = u % cells;
    std::vector<std::uint8_t>& row = reached[u];
    std::size_t count = 0;
    for (unsigned depth = 1; depth <= max_depth && count < total; ++depth) {
      depth_used[u] = depth;
      const unsigned level = resolution + depth;
      // Odd numerators only: even ones were visited at a shallower depth.
      for (std::uint64_t k = 1; k < (std::uint64_t{1} << depth); k += 2) {
        GraphPoint x = sys.point_on_arc(arc, Rational::dyadic((j << depth) + k, level));
        for (unsigned n = 1; n <= horizon; ++n) {
          GraphPoint y = sys.step(x);
          const bool fixed = y == x;
          x = std::move(y);
          for (const auto& c : sys.coordinates(x)) {
            if (const auto v = open_cell(c.t, resolution)) {
              auto& cell = row[(c.arc - 1) * cells + *v];
              if (!cell) {
                cell = 1;
                ++count;
              }
            }
          }
          if (fixed) break;
        }
      }
    }
  });

  ChaosReport report = new_report(sys, "transitivity");
  std::size_t pairs = 0;
  for (std::size_t u = 0; u < total; ++u) {
    for (std::size_t v = 0; v < total; ++v) {
      if (reached[u][v]) {
        ++pairs;
      } else {
        report.add_witness("no orbit from " + cell_name(sys, u / cells + 1, u % cells, resolution) +
                           " to " + cell_name(sys, v / cells + 1, v % cells, resolution));
      }
    }
  }
  report.params = {{"resolution", resolution},
                   {"horizon", horizon},
                   {"max_refinement", max_depth},
                   {"pairs_witnessed", pairs},
                   {"pairs_total", total * total}};
  report.pass = report.witness_count == 0;
  report.notes.push_back("open dyadic cells; sources are dyadic points inside each cell");
  report.elapsed_ms = ms_since(start);
  return report;
}

// ---- sensitivity ----------------------------------------------------------

ChaosReport sensitivity_probe(const ChaosSystem& sys, const Rational& eta, const Rational& delta,
                              std::size_t grid, unsigned horizon, Execution exec) {
  if (grid == 0 || grid > 4096) throw std::out_of_range("grid must be in 1..2^12");
  if (delta.is_zero() || eta.is_zero()) throw std::invalid_argument("eta and delta must be positive");
  if (horizon > 4096) throw std::out_of_range("horizon must be at most 4096");
  const auto start = Clock::now();

  constexpr unsigned kHalvings = 4;
  const std::size_t total = sys.arc_count() * grid;
  std::vector<std::uint8_t> separated(total, 0);
  std::vector<unsigned> separation_step(total, 0);

  for_each_index(exec, total, [&](std::size_t idx) {
    const std::size_t arc = idx / grid + 1;
    const std::size_t k = idx % grid;
    const Rational t(2 * k + 1, 2 * grid);
    std::vector<GraphPoint> orbit{sys.point_on_arc(arc, t)};
    for (unsigned n = 0; n < horizon; ++n) orbit.push_back(sys.step(orbit.back()));

    Rational offset = delta;
    for (unsigned h = 0; h <= kHalvings && !separated[idx]; ++h) {
      for (int sign : {1, -1}) {
        std::optional<Rational> s;
        if (sign > 0) {
          Rational up = t + offset;
          if (up.in_unit_interval()) s = std::move(up);
        } else if (offset <= t) {
          s = minus(t, offset);
        }
        if (!s) continue;
        GraphPoint y = sys.point_on_arc(arc, *s);
        for (unsigned n = 0; n <= horizon; ++n) {
          if (sys.distance(orbit[n], y) > eta) {
            separated[idx] = 1;
            separation_step[idx] = n;
            break;
          }
          if (n < horizon) y = sys.step(y);
        }
        if (separated[idx]) break;
      }
      offset /= Rational(2);
    }
  });

  ChaosReport report = new_report(sys, "sensitivity");
  unsigned slowest = 0;
  std::size_t ok = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (separated[idx]) {
      ++ok;
      slowest = std::max(slowest, separation_step[idx]);
    } else {
      const Rational t(2 * (idx % grid) + 1, 2 * grid);
      report.add_witness("no separation near " + sys.arc_name(idx / grid + 1) + ":" + t.to_string());
    }
  }
  report.params = {{"eta", eta.to_string()},
                   {"delta", delta.to_string()},
                   {"grid", grid},
                   {"horizon", horizon},
                   {"points_separated", ok},
                   {"points_total", total}};
  if (ok > 0) report.params["slowest_separation_step"] = slowest;
  report.pass = report.witness_count == 0;
  report.notes.push_back("partners x +/- delta/2^j, j <= 4, same arc");
  report.elapsed_ms = ms_since(start);
  return report;
}

// ---- commute relation on periodic points and the dense orbit ---------------

ChaosReport commute_check(const ChaosSystem& sys, unsigned max_period, std::size_t orbit_steps,
                          Execution exec) {
  if (max_period == 0 || max_period > 16) throw std::out_of_range("max_period must be in 1..16");
  if (orbit_steps > 1'000'000) throw std::out_of_range("orbit_steps must be at most 10^6");
  require_symbolic(sys);
  const auto start = Clock::now();

  const std::vector<Word> words = primitive_words_up_to(max_period);
  // 0 ok, 1 relation fails, 2 lies in a fiber where (*) fails.
  std::vector<std::uint8_t> word_status(words.size(), 0);
  for_each_index(exec, words.size(), [&](std::size_t i) {
    if (sys.violates(words[i])) {
      word_status[i] = 2;
    } else if (!sys.commutes(words[i])) {
      word_status[i] = 1;
    }
  });

  const StreamWord origin = sys.dense_stream();
  std::vector<std::uint8_t> orbit_status(orbit_steps, 0);
  for_each_index(exec, orbit_steps, [&](std::size_t n) {
    if (!sys.commutes(stream_advance(origin, n))) orbit_status[n] = 1;
  });

  ChaosReport report = new_report(sys, "lemma6");
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (word_status[i] == 2) {
      report.add_witness("periodic word " + words[i].to_string() + " lies in a fiber violating (*)");
    } else if (word_status[i] == 1) {
      report.add_witness("H(pi(w)) != pi(G(w)) for periodic w = " + words[i].to_string());
    }
  }
  for (std::size_t n = 0; n < orbit_steps; ++n) {
    if (orbit_status[n]) report.add_witness("H(pi(w)) != pi(G(w)) at dense orbit step " + std::to_string(n));
  }
  report.params = {{"max_period", max_period},
                   {"orbit_steps", orbit_steps},
                   {"periodic_words", words.size()}};
  report.pass = report.witness_count == 0;
  report.notes.push_back("dense orbit points are checked through eventually periodic words sharing "
                         "their first 2p bits, p from 64 doubling to 1024");
  report.notes.push_back("continuity of F is not tested");
  report.elapsed_ms = ms_since(start);
  return report;
}

}  // namespace symchaos
