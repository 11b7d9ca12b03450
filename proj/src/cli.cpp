#include "symchaos/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>

#include "symchaos/graph.hpp"
#include "symchaos/interval.hpp"
#include "symchaos/symbolic.hpp"
#include "symchaos/verifier.hpp"

namespace symchaos::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string approx(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", r.to_double());
  return buf;
}

Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

UnitPoint parse_unit(const std::string& text) {
  Rational r = parse_rational(text, "--x");
  if (!r.in_unit_interval()) throw UsageError("--x: " + r.to_string() + " is outside [0, 1]");
  return UnitPoint(std::move(r));
}

using IntervalFn = UnitPoint (*)(const UnitPoint&);

IntervalFn interval_map(const std::string& name) {
  static const std::map<std::string, IntervalFn> maps{{"tent", tent},
                                                      {"baker", baker},
                                                      {"induced-tent", induced_tent},
                                                      {"induced-baker", induced_baker}};
  const auto it = maps.find(name);
  if (it == maps.end()) throw UsageError("unknown system '" + name + "'");
  return it->second;
}

std::shared_ptr<const GraphSystem> load_system(const std::string& file) {
  try {
    return std::make_shared<const GraphSystem>(load_graph(file));
  } catch (const GraphParseError& e) {
    throw UsageError(file + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

// ---- options ---------------------------------------------------------------

struct EvalOptions {
  std::string system;
  std::string x;
};

struct OrbitOptions {
  std::string system;
  std::string x;
  std::size_t steps = 10;
  std::string format = "csv";
};

struct GraphOrbitOptions {
  std::string file;
  std::string start;
  std::size_t steps = 10;
  std::string format = "csv";
};

struct VerifyOptions {
  std::string system;
  std::string file;
  std::string property;
  std::optional<unsigned> max_period;
  std::optional<unsigned> resolution;
  std::optional<std::size_t> steps;
  std::optional<unsigned> horizon;
  std::optional<std::string> eta;
  std::string delta = "1/4096";
  std::size_t grid = 256;
  std::optional<std::size_t> orbit_steps;
  bool serial = false;
};

struct ConjugacyOptions {
  unsigned length = 15;
};

struct FiberOptions {
  std::string x;
  std::string file;
  std::optional<std::string> arc;
  std::optional<std::string> star;
};

// ---- commands --------------------------------------------------------------

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  const UnitPoint y = parse_unit(o.x);
  out << interval_map(o.system)(y).value().to_string() << '\n';
  return kOk;
}

int cmd_orbit(const OrbitOptions& o, std::ostream& out) {
  const IntervalFn f = interval_map(o.system);
  UnitPoint y = parse_unit(o.x);
  if (o.format == "csv") {
    out << "step,num,den,approx\n";
    for (std::size_t n = 0; n <= o.steps; ++n) {
      const Rational& v = y.value();
      out << n << ',' << v.numerator().get_str() << ',' << v.denominator().get_str() << ',' << approx(v)
          << '\n';
      if (n < o.steps) y = f(y);
    }
    return kOk;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t n = 0; n <= o.steps; ++n) {
    const Rational& v = y.value();
    rows.push_back({{"step", n},
                    {"num", v.numerator().get_str()},
                    {"den", v.denominator().get_str()},
                    {"approx", v.to_double()}});
    if (n < o.steps) y = f(y);
  }
  out << nlohmann::json{{"system", o.system}, {"x", parse_unit(o.x).value().to_string()}, {"orbit", rows}}
             .dump(2)
      << '\n';
  return kOk;
}

int cmd_graph_orbit(const GraphOrbitOptions& o, std::ostream& out) {
  const auto sys = load_system(o.file);
  GraphPoint start = GraphPoint::node("");
  try {
    start = parse_graph_point(*sys, o.start);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--start: ") + e.what());
  }
  const auto orbit = graph_orbit(*sys, start, o.steps);
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n = 0; n < orbit.size(); ++n) {
      const GraphPoint& p = orbit[n];
      nlohmann::json row{{"step", n}};
      if (p.is_node()) {
        row["arc_or_node"] = "node:" + p.node_id();
      } else {
        row["arc_or_node"] = sys->spec().arc(p.arc()).id;
        row["t_num"] = p.t().numerator().get_str();
        row["t_den"] = p.t().denominator().get_str();
        row["approx"] = p.t().to_double();
      }
      rows.push_back(std::move(row));
    }
    out << nlohmann::json{{"start", o.start}, {"orbit", rows}}.dump(2) << '\n';
    return kOk;
  }
  out << "step,arc_or_node,t_num,t_den,approx\n";
  for (std::size_t n = 0; n < orbit.size(); ++n) {
    const GraphPoint& p = orbit[n];
    out << n << ',';
    if (p.is_node()) {
      out << "node:" << p.node_id() << ",,,\n";
    } else {
      out << sys->spec().arc(p.arc()).id << ',' << p.t().numerator().get_str() << ','
          << p.t().denominator().get_str() << ',' << approx(p.t()) << '\n';
    }
  }
  return kOk;
}

template <class T>
T pick(const std::optional<T>& given, T fallback) {
  return given ? *given : fallback;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  std::unique_ptr<ChaosSystem> sys;
  bool graph = false;
  if (o.system == "graph") {
    if (o.file.empty()) throw UsageError("--system graph needs --file");
    sys = std::make_unique<GraphChaosSystem>(load_system(o.file), std::filesystem::path(o.file).stem().string());
    graph = true;
  } else if (!o.file.empty()) {
    throw UsageError("--file is only valid with --system graph");
  } else if (o.system == "tent") {
    sys = make_tent_chaos_system();
  } else if (o.system == "baker") {
    sys = make_baker_chaos_system();
  } else if (o.system == "identity") {
    sys = make_identity_control();
  } else if (o.system == "constant") {
    sys = make_constant_control();
  } else if (o.system == "rotation") {
    sys = make_rotation_control();
  } else {
    throw UsageError("unknown system '" + o.system + "'");
  }

  const Execution exec = o.serial ? Execution::serial : Execution::parallel;
  ChaosReport report;
  try {
    if (o.property == "periodic-density") {
      report = periodic_density(*sys, pick(o.max_period, 12U), pick(o.resolution, 7U), exec);
    } else if (o.property == "dense-orbit") {
      report = dense_orbit_coverage(*sys, pick(o.steps, std::size_t{25000}), pick(o.resolution, 8U), exec);
    } else if (o.property == "transitivity") {
      report = transitivity_witness(*sys, pick(o.resolution, 4U), pick(o.horizon, 20U), exec);
    } else if (o.property == "sensitivity") {
      const Rational eta = parse_rational(pick(o.eta, std::string(graph ? "1/8" : "1/4")), "--eta");
      const Rational delta = parse_rational(o.delta, "--delta");
      report = sensitivity_probe(*sys, eta, delta, o.grid, pick(o.horizon, 40U), exec);
    } else if (o.property == "lemma6") {
      report = commute_check(*sys, pick(o.max_period, 12U), pick(o.orbit_steps, std::size_t{20000}), exec);
    } else {
      throw UsageError("unknown property '" + o.property + "'");
    }
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << report.to_json().dump(2) << '\n';
  return report.pass ? kOk : kFail;
}

int cmd_conjugacy(const ConjugacyOptions& o, std::ostream& out) {
  if (o.length < 2 || o.length > 24) throw UsageError("--length must be in 2..24");
  const std::size_t compared = o.length - 1;
  const std::uint64_t total = std::uint64_t{1} << o.length;
  std::uint64_t agree = 0;
  std::optional<std::string> first_bad;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    Bits prefix(o.length);
    for (unsigned i = 0; i < o.length; ++i) prefix[i] = (seed >> (o.length - 1 - i)) & 1U;
    bool ok = true;
    for (std::uint8_t tail : {0, 1}) {
      const Word w(prefix, Bits{tail});
      if (shift_map(r_map(w)).prefix(compared) != r_map(c_map(w)).prefix(compared)) ok = false;
    }
    if (ok) {
      ++agree;
    } else if (!first_bad) {
      first_bad = Word(prefix, Bits{0}).to_string();
    }
  }
  out << "S o R = R o C on " << agree << '/' << total << " prefixes of length " << o.length << ", "
      << compared << " output bits each\n";
  if (first_bad) out << "first disagreement: " << *first_bad << '\n';
  return agree == total ? kOk : kFail;
}

int cmd_fiber(const FiberOptions& o, std::ostream& out) {
  const Rational t = parse_rational(o.x, "--x");
  if (!t.in_unit_interval()) throw UsageError("--x: " + t.to_string() + " is outside [0, 1]");
  std::optional<SymbolicMap> map;
  if (o.star) {
    if (*o.star == "S") {
      map = SymbolicMap::shift;
    } else if (*o.star == "C") {
      map = SymbolicMap::c_map;
    } else {
      throw UsageError("--star must be S or C");
    }
  }

  if (o.file.empty()) {
    if (o.arc) throw UsageError("--arc needs --file");
    if (map) {
      const IntervalSystem induced(*map, IntervalCodec{}, OverridePolicy<UnitPoint>::identity(), {});
      const auto outcome = induced.star_check(interval_fiber(UnitPoint(t)));
      out << star_outcome_json(outcome, induced.codec()).dump(2) << '\n';
      return kOk;
    }
    for (const Word& w : bits_of(t)) out << w.to_string() << '\n';
    return kOk;
  }

  const auto sys = load_system(o.file);
  if (!o.arc) throw UsageError("--file needs --arc");
  GraphPoint p = GraphPoint::node("");
  try {
    p = parse_graph_point(*sys, *o.arc + ":" + t.to_string());
  } catch (const std::exception& e) {
    throw UsageError(std::string("--arc: ") + e.what());
  }
  const Fiber fib = sys->codec().encode(p);
  if (map) {
    const InducedSystem<GraphCodec> induced(*map, sys->codec(), OverridePolicy<GraphPoint>::identity(), {});
    out << star_outcome_json(induced.star_check(fib), induced.codec()).dump(2) << '\n';
    return kOk;
  }
  for (const Word& w : fib) out << w.to_string() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact dynamics induced by symbolic maps on the interval and on finite graphs", "symchaos"};
  app.require_subcommand(1);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Apply an interval map to one rational point");
  eval_cmd->add_option("--system", eval.system, "tent | baker | induced-tent | induced-baker")->required();
  eval_cmd->add_option("--x", eval.x, "Point p/q in [0, 1]")->required();

  OrbitOptions orbit;
  auto* orbit_cmd = app.add_subcommand("orbit", "Exact orbit of an interval map");
  orbit_cmd->add_option("--system", orbit.system, "tent | baker | induced-tent | induced-baker")->required();
  orbit_cmd->add_option("--x", orbit.x, "Start point p/q")->required();
  orbit_cmd->add_option("--steps", orbit.steps, "Number of steps")->check(CLI::Range(0, 1'000'000));
  orbit_cmd->add_option("--format", orbit.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  GraphOrbitOptions gorbit;
  auto* gorbit_cmd = app.add_subcommand("graph-orbit", "Exact orbit of the induced map on a graph");
  gorbit_cmd->add_option("--file", gorbit.file, "Graph file")->required();
  gorbit_cmd->add_option("--start", gorbit.start, "ARC:p/q or node:ID")->required();
  gorbit_cmd->add_option("--steps", gorbit.steps, "Number of steps")->check(CLI::Range(0, 1'000'000));
  gorbit_cmd->add_option("--format", gorbit.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check one chaos property at finite resolution");
  verify_cmd
      ->add_option("--system", verify.system, "tent | baker | graph | identity | constant | rotation")
      ->required();
  verify_cmd->add_option("--file", verify.file, "Graph file for --system graph");
  verify_cmd
      ->add_option("--property", verify.property,
                   "periodic-density | dense-orbit | transitivity | sensitivity | lemma6")
      ->required();
  verify_cmd->add_option("--max-period", verify.max_period, "Largest period enumerated");
  verify_cmd->add_option("--resolution", verify.resolution, "Cells have width 2^-resolution");
  verify_cmd->add_option("--steps", verify.steps, "Orbit length for dense-orbit");
  verify_cmd->add_option("--horizon", verify.horizon, "Iteration horizon");
  verify_cmd->add_option("--eta", verify.eta, "Separation threshold p/q");
  verify_cmd->add_option("--delta", verify.delta, "Initial offset p/q");
  verify_cmd->add_option("--grid", verify.grid, "Grid points per arc");
  verify_cmd->add_option("--orbit-steps", verify.orbit_steps, "Dense orbit steps for lemma6");
  verify_cmd->add_flag("--serial", verify.serial, "Run the serial reference path");

  ConjugacyOptions conj;
  auto* conj_cmd = app.add_subcommand("conjugacy", "Compare S o R with R o C on all prefixes");
  conj_cmd->add_option("--length", conj.length, "Prefix length");

  FiberOptions fiber;
  auto* fiber_cmd = app.add_subcommand("fiber", "List the words over a point");
  fiber_cmd->add_option("--x", fiber.x, "Point p/q in [0, 1]")->required();
  fiber_cmd->add_option("--file", fiber.file, "Graph file");
  fiber_cmd->add_option("--arc", fiber.arc, "Arc id or 1-based index");
  fiber_cmd->add_option("--star", fiber.star, "Report the image fibers under S or C as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*orbit_cmd) return cmd_orbit(orbit, out);
    if (*gorbit_cmd) return cmd_graph_orbit(gorbit, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*conj_cmd) return cmd_conjugacy(conj, out);
    if (*fiber_cmd) return cmd_fiber(fiber, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace symchaos::cli
