#include <doctest.h>

#include <map>
#include <set>

#include "support.hpp"
#include "symchaos/symbolic.hpp"
#include "symchaos/verifier.hpp"

using namespace symchaos;

namespace {

std::shared_ptr<const GraphSystem> graph(const char* name) {
  return std::make_shared<const GraphSystem>(load_graph(oracle::data_path(name)));
}

// Closed-cell coverage of a point set.
std::set<std::size_t> closed_coverage(const std::set<mpq_class>& points, unsigned p) {
  std::set<std::size_t> cells;
  const mpz_class scale = mpz_class(1) << p;
  for (const auto& x : points) {
    mpq_class y = x * scale;
    y.canonicalize();
    const mpz_class f = y.get_num() / y.get_den();
    if (f < scale) cells.insert(f.get_ui());
    if (y.get_den() == 1 && f > 0) cells.insert(f.get_ui() - 1);
  }
  return cells;
}

using Interval = std::pair<mpq_class, mpq_class>;

// Images of a union of closed intervals under a piecewise linear map with a
// break at 1/2, each branch applied to its part.
std::vector<Interval> push_forward(const std::vector<Interval>& in, bool tent_map) {
  const mpq_class half(1, 2);
  std::vector<Interval> out;
  for (auto [a, b] : in) {
    if (a < half) {
      const mpq_class hi = b < half ? b : half;
      out.emplace_back(2 * a, 2 * hi);
    }
    if (b > half) {
      const mpq_class lo = a > half ? a : half;
      if (tent_map) {
        out.emplace_back(2 - 2 * b, 2 - 2 * lo);
      } else {
        out.emplace_back(2 * lo - 1, 2 * b - 1);
      }
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<Interval> merged;
  for (auto& iv : out) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      if (iv.second > merged.back().second) merged.back().second = iv.second;
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

// Pairs of open cells (U, V) with F^n(U) meeting V for some 1 <= n <= T.
std::size_t propagated_pairs(bool tent_map, unsigned p, unsigned horizon) {
  const std::size_t cells = std::size_t{1} << p;
  const mpz_class scale = mpz_class(1) << p;
  std::size_t pairs = 0;
  for (std::size_t u = 0; u < cells; ++u) {
    std::vector<Interval> image{{mpq_class(u, scale), mpq_class(u + 1, scale)}};
    std::set<std::size_t> hit;
    for (unsigned n = 1; n <= horizon && hit.size() < cells; ++n) {
      image = push_forward(image, tent_map);
      for (auto& [a, b] : image) {
        if (a == b) continue;
        for (std::size_t v = 0; v < cells; ++v) {
          if (a < mpq_class(v + 1, scale) && b > mpq_class(v, scale)) hit.insert(v);
        }
      }
    }
    pairs += hit.size();
  }
  return pairs;
}

}  // namespace

TEST_CASE("interval systems present [0, 1] as one arc") {
  const auto tent_sys = make_tent_chaos_system();
  CHECK(tent_sys->arc_count() == 1);
  CHECK(tent_sys->point_on_arc(1, Rational(0)) == GraphPoint::node("0"));
  CHECK(tent_sys->point_on_arc(1, Rational(1)) == GraphPoint::node("1"));
  const GraphPoint x = tent_sys->point_on_arc(1, Rational(1, 4));
  CHECK(tent_sys->describe(tent_sys->step(x)) == "1/2");
  CHECK(tent_sys->distance(x, GraphPoint::node("1")) == Rational(3, 4));
  CHECK(tent_sys->symbolic());
  CHECK_FALSE(make_identity_control()->symbolic());
  const auto rot = make_rotation_control();
  CHECK(rot->describe(rot->step(rot->point_on_arc(1, Rational(5, 6)))) == "1/6");
  CHECK(rot->describe(rot->step(GraphPoint::node("1"))) == "1/3");
}

TEST_CASE("graph systems list every arc-end of a node") {
  const GraphChaosSystem k3(graph("k3.graph"), "k3");
  const auto coords = k3.coordinates(GraphPoint::node("b"));
  REQUIRE(coords.size() == 2);
  CHECK(coords[0].arc == 1);
  CHECK(coords[0].t == Rational(1));
  CHECK(coords[1].arc == 2);
  CHECK(coords[1].t == Rational(0));
}

TEST_CASE("periodic density") {
  SUBCASE("tent, cross-checked against branch-solved fixed points") {
    const auto r = periodic_density(*make_tent_chaos_system(), 12, 7);
    CHECK(r.pass);
    CHECK(r.params["cells_covered"] == 128);
    std::set<mpq_class> points;
    std::size_t expected_kept = 0;
    for (unsigned k = 1; k <= 12; ++k) {
      const auto fixed = oracle::tent_fixed_points(k);
      for_each_primitive_periodic_word(k, [&](const Word& w) {
        const mpq_class v = oracle::series_value(w.preperiod(), w.period());
        if (fixed.contains(v)) {
          ++expected_kept;
          points.insert(v);
        }
      });
    }
    CHECK(r.params["periodic_points"] == expected_kept);
    CHECK(closed_coverage(points, 7).size() == 128);
  }
  SUBCASE("baker, cross-checked against k/(2^n - 1)") {
    const auto r = periodic_density(*make_baker_chaos_system(), 12, 7);
    CHECK(r.pass);
    std::set<mpq_class> points;
    for (unsigned k = 1; k <= 12; ++k) {
      const auto closed = oracle::baker_periodic_points(k);
      points.insert(closed.begin(), closed.end());
    }
    CHECK(closed_coverage(points, 7).size() == 128);
    // Every periodic word projects to a baker periodic point.
    CHECK(r.params["periodic_points"] == r.params["symbolic_words"]);
  }
  SUBCASE("too few periods leave cells uncovered") {
    const auto r = periodic_density(*make_tent_chaos_system(), 2, 7);
    CHECK_FALSE(r.pass);
    CHECK(r.witness_count > 100);
    CHECK(r.witnesses.size() == ChaosReport::kMaxWitnesses);
    CHECK(r.witnesses[0].find("uncovered cell I[") == 0);
  }
  SUBCASE("rotation by 1/3 has no points of period 1 or 2") {
    const auto r = periodic_density(*make_rotation_control(), 2, 4);
    CHECK_FALSE(r.pass);
    CHECK(r.params["periodic_points"] == 0);
    // Every point has period 3, so longer periods cover everything.
    CHECK(periodic_density(*make_rotation_control(), 12, 4).pass);
  }
  SUBCASE("K3 graph per arc") {
    const GraphChaosSystem k3(graph("k3.graph"), "k3");
    const auto r = periodic_density(k3, 10, 4);
    CHECK(r.pass);
    CHECK(r.params["cells_total"] == 48);
  }
  SUBCASE("bounds") {
    CHECK_THROWS_AS(periodic_density(*make_tent_chaos_system(), 25, 7), std::out_of_range);
    CHECK_THROWS_AS(periodic_density(*make_tent_chaos_system(), 4, 17), std::out_of_range);
  }
}

TEST_CASE("dense orbit coverage") {
  SUBCASE("baker, cross-checked by a window scan of the dense word") {
    const auto r = dense_orbit_coverage(*make_baker_chaos_system(), 25000, 8);
    CHECK(r.pass);
    const Bits psi = oracle::psi0(25000 + 16);
    std::map<std::size_t, std::size_t> first;
    for (std::size_t n = 0; n <= 25000; ++n) {
      std::size_t cell = 0;
      for (unsigned i = 0; i < 8; ++i) cell = cell * 2 + psi[n + i];
      first.emplace(cell, n);
    }
    REQUIRE(first.size() == 256);
    std::size_t last = 0;
    for (auto [cell, n] : first) last = std::max(last, n);
    CHECK(r.params["covered_by_step"] == last);
  }
  SUBCASE("tent through the conjugate stream") {
    CHECK(dense_orbit_coverage(*make_tent_chaos_system(), 25000, 8).pass);
  }
  SUBCASE("short orbits fail") {
    const auto r = dense_orbit_coverage(*make_baker_chaos_system(), 100, 8);
    CHECK_FALSE(r.pass);
    CHECK(r.witness_count >= 256 - 101);
  }
  SUBCASE("K3, cross-checked by counting windows behind the arc prefixes") {
    const GraphChaosSystem k3(graph("k3.graph"), "k3");
    const auto r = dense_orbit_coverage(k3, 60000, 5);
    CHECK(r.pass);
    const Bits psi = oracle::psi0(60000 + 16);
    std::map<std::pair<int, std::size_t>, std::size_t> first;
    for (std::size_t n = 0; n <= 60000; ++n) {
      int arc = psi[n] == 0 ? 1 : (psi[n + 1] == 0 ? 2 : 3);
      const std::size_t skip = arc == 1 ? 1 : 2;
      std::size_t cell = 0;
      for (unsigned i = 0; i < 5; ++i) cell = cell * 2 + psi[n + skip + i];
      first.emplace(std::make_pair(arc, cell), n);
    }
    REQUIRE(first.size() == 96);
    std::size_t last = 0;
    for (auto [key, n] : first) last = std::max(last, n);
    CHECK(r.params["covered_by_step"] == last);
  }
  SUBCASE("needs a symbolic system") {
    CHECK_THROWS_AS(dense_orbit_coverage(*make_identity_control(), 10, 4), std::invalid_argument);
  }
  SUBCASE("bounds") {
    CHECK_THROWS_AS(dense_orbit_coverage(*make_baker_chaos_system(), 1'000'001, 4), std::out_of_range);
  }
}

TEST_CASE("transitivity") {
  SUBCASE("tent and baker agree with interval-image propagation") {
    for (const bool tent_map : {true, false}) {
      const auto sys = tent_map ? make_tent_chaos_system() : make_baker_chaos_system();
      const auto r = transitivity_witness(*sys, 4, 20);
      CHECK(r.pass);
      CHECK(propagated_pairs(tent_map, 4, 20) == 256);
      CHECK(r.params["pairs_witnessed"] == 256);
    }
  }
  SUBCASE("the identity is not transitive") {
    const auto r = transitivity_witness(*make_identity_control(), 2, 20);
    CHECK_FALSE(r.pass);
    CHECK(r.witness_count == 12);
  }
  SUBCASE("a cell containing a fixed point reaches itself") {
    // 2/3 is tent-fixed and lies in the open cell (1/2, 3/4).
    const auto r = transitivity_witness(*make_tent_chaos_system(), 2, 1);
    for (const auto& w : r.witnesses) CHECK(w.find("from I[1/2,3/4] to I[1/2,3/4]") == std::string::npos);
  }
  SUBCASE("K3") { CHECK(transitivity_witness(GraphChaosSystem(graph("k3.graph")), 2, 20).pass); }
  SUBCASE("bounds") { CHECK_THROWS_AS(transitivity_witness(*make_tent_chaos_system(), 9, 4), std::out_of_range); }
}

TEST_CASE("sensitivity") {
  const Rational eta(1, 4);
  const Rational delta = Rational::pow2_inverse(12);
  SUBCASE("tent and baker, cross-checked by direct iteration") {
    for (const bool tent_map : {true, false}) {
      const auto sys = tent_map ? make_tent_chaos_system() : make_baker_chaos_system();
      const auto r = sensitivity_probe(*sys, eta, delta, 256, 40);
      CHECK(r.pass);
      auto f = [&](const mpq_class& x) { return tent_map ? oracle::tent(x) : oracle::baker(x); };
      const mpq_class e(1, 4);
      unsigned slowest = 0;
      for (unsigned k = 0; k < 256; ++k) {
        const mpq_class x0(2 * k + 1, 512);
        std::optional<unsigned> found;
        mpq_class off = delta.get();
        for (unsigned h = 0; h <= 4 && !found; ++h, off /= 2) {
          for (int sign : {1, -1}) {
            mpq_class y = sign > 0 ? mpq_class(x0 + off) : mpq_class(x0 - off);
            if (y < 0 || y > 1) continue;
            mpq_class x = x0;
            for (unsigned n = 0; n <= 40; ++n) {
              if (abs(x - y) > e) {
                found = n;
                break;
              }
              x = f(x);
              y = f(y);
            }
            if (found) break;
          }
        }
        REQUIRE(found);
        slowest = std::max(slowest, *found);
      }
      CHECK(r.params["slowest_separation_step"] == slowest);
      CHECK(slowest <= 14);
    }
  }
  SUBCASE("constant and identity maps are not sensitive") {
    const auto c = sensitivity_probe(*make_constant_control(), eta, delta, 256, 40);
    CHECK_FALSE(c.pass);
    CHECK(c.witness_count == 256);
    CHECK_FALSE(sensitivity_probe(*make_identity_control(), eta, delta, 256, 40).pass);
  }
  SUBCASE("K3 under the Hausdorff metric") {
    CHECK(sensitivity_probe(GraphChaosSystem(graph("k3.graph")), Rational(1, 8), delta, 64, 40).pass);
  }
  SUBCASE("bounds") {
    CHECK_THROWS_AS(sensitivity_probe(*make_tent_chaos_system(), eta, delta, 4097, 4), std::out_of_range);
    CHECK_THROWS_AS(sensitivity_probe(*make_tent_chaos_system(), eta, Rational(0), 4, 4), std::invalid_argument);
  }
}

TEST_CASE("commute check") {
  SUBCASE("baker") {
    const auto r = commute_check(*make_baker_chaos_system(), 12, 20000);
    CHECK(r.pass);
    // No periodic word of period <= 12 lies over 1/2.
    for (unsigned k = 1; k <= 12; ++k) {
      for (const Word& w : periodic_words(k)) CHECK(oracle::series_value(w.preperiod(), w.period()) != mpq_class(1, 2));
    }
  }
  SUBCASE("tent") { CHECK(commute_check(*make_tent_chaos_system(), 12, 2000).pass); }
  SUBCASE("K3: eventually constant periodic words are the node fibers' members") {
    const GraphChaosSystem k3(graph("k3.graph"), "k3");
    CHECK(commute_check(k3, 12, 20000).pass);
    for (unsigned k = 1; k <= 12; ++k) {
      for (const Word& w : periodic_words(k)) {
        if (!w.eventually_constant()) continue;
        CHECK(k3.project(w).is_node());
        CHECK(k3.commutes(w));
      }
    }
  }
  SUBCASE("violating fibers are reported") {
    // 1:0 lies over 1/2 where the baker relation fails; pin the word-level fact.
    CHECK(make_baker_chaos_system()->violates(Word::parse("1:0")));
    CHECK_FALSE(make_baker_chaos_system()->commutes(Word::parse("1:0")));
  }
  SUBCASE("controls have no symbolic side") {
    CHECK_THROWS_AS(commute_check(*make_identity_control(), 4, 10), std::invalid_argument);
  }
  SUBCASE("bounds") { CHECK_THROWS_AS(commute_check(*make_tent_chaos_system(), 17, 1), std::out_of_range); }
}

TEST_CASE("serial and parallel runs give identical reports") {
  const auto tent_sys = make_tent_chaos_system();
  const auto baker_sys = make_baker_chaos_system();
  const GraphChaosSystem k3(graph("k3.graph"), "k3");
  const Rational eta(1, 4);
  const Rational delta = Rational::pow2_inverse(10);
  for (const ChaosSystem* sys : {static_cast<const ChaosSystem*>(tent_sys.get()),
                                 static_cast<const ChaosSystem*>(baker_sys.get()),
                                 static_cast<const ChaosSystem*>(&k3)}) {
    CHECK(periodic_density(*sys, 8, 5, Execution::serial).data_json() ==
          periodic_density(*sys, 8, 5, Execution::parallel).data_json());
    CHECK(dense_orbit_coverage(*sys, 3000, 5, Execution::serial).data_json() ==
          dense_orbit_coverage(*sys, 3000, 5, Execution::parallel).data_json());
    CHECK(transitivity_witness(*sys, 2, 10, Execution::serial).data_json() ==
          transitivity_witness(*sys, 2, 10, Execution::parallel).data_json());
    CHECK(sensitivity_probe(*sys, eta, delta, 32, 30, Execution::serial).data_json() ==
          sensitivity_probe(*sys, eta, delta, 32, 30, Execution::parallel).data_json());
    CHECK(commute_check(*sys, 6, 300, Execution::serial).data_json() ==
          commute_check(*sys, 6, 300, Execution::parallel).data_json());
  }
  // Failing reports too, witnesses included.
  CHECK(periodic_density(*tent_sys, 2, 7, Execution::serial).data_json() ==
        periodic_density(*tent_sys, 2, 7, Execution::parallel).data_json());
}

TEST_CASE("reports") {
  SUBCASE("verdict and witnesses agree") {
    const auto pass = periodic_density(*make_baker_chaos_system(), 6, 3);
    CHECK(pass.pass);
    CHECK(pass.witnesses.empty());
    const auto fail = dense_orbit_coverage(*make_baker_chaos_system(), 10, 6);
    CHECK_FALSE(fail.pass);
    CHECK_FALSE(fail.witnesses.empty());
  }
  SUBCASE("JSON round trip") {
    const auto r = dense_orbit_coverage(*make_baker_chaos_system(), 10, 6);
    const auto j = r.to_json();
    CHECK(j["verdict"] == "fail");
    CHECK(j.contains("elapsed_ms"));
    const ChaosReport back = ChaosReport::from_json(j);
    CHECK(back.to_json() == j);
    CHECK_FALSE(r.data_json().contains("elapsed_ms"));
  }
  SUBCASE("schema violations are rejected") {
    auto j = periodic_density(*make_baker_chaos_system(), 4, 2).to_json();
    j["verdict"] = "maybe";
    CHECK_THROWS_AS(ChaosReport::from_json(j), std::invalid_argument);
    j["verdict"] = "fail";
    CHECK_THROWS_AS(ChaosReport::from_json(j), std::invalid_argument);
    j.erase("system");
    CHECK_THROWS(ChaosReport::from_json(j));
  }
  SUBCASE("reproducible") {
    const auto a = transitivity_witness(*make_baker_chaos_system(), 3, 10);
    const auto b = transitivity_witness(*make_baker_chaos_system(), 3, 10);
    CHECK(a.data_json().dump() == b.data_json().dump());
  }
}
