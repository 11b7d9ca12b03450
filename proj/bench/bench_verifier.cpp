// Wall-clock comparison of the serial and OpenMP paths of each verifier kernel.
//
//   symchaos_bench [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "symchaos/verifier.hpp"

using namespace symchaos;

namespace {

struct Case {
  std::string name;
  std::function<ChaosReport(Execution)> run;
};

double best_ms(const Case& c, Execution exec, int repeats, ChaosReport& last) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    last = c.run(exec);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  const auto tent = make_tent_chaos_system();
  const auto baker = make_baker_chaos_system();
  const std::string graph_file = std::string(SYMCHAOS_BENCH_DATA) + "/k3.graph";
  const GraphChaosSystem k3(std::make_shared<const GraphSystem>(load_graph(graph_file)), "k3");

  const std::vector<Case> cases{
      {"tent periodic-density 12/7", [&](Execution e) { return periodic_density(*tent, 12, 7, e); }},
      {"baker dense-orbit 25000/8", [&](Execution e) { return dense_orbit_coverage(*baker, 25000, 8, e); }},
      {"tent transitivity 4/20", [&](Execution e) { return transitivity_witness(*tent, 4, 20, e); }},
      {"baker sensitivity g=256",
       [&](Execution e) { return sensitivity_probe(*baker, Rational(1, 4), Rational::pow2_inverse(12), 256, 40, e); }},
      {"tent lemma6 12/20000", [&](Execution e) { return commute_check(*tent, 12, 20000, e); }},
      {"k3 lemma6 12/20000", [&](Execution e) { return commute_check(k3, 12, 20000, e); }},
      {"k3 periodic-density 14/5", [&](Execution e) { return periodic_density(k3, 14, 5, e); }},
  };

  std::printf("threads: %d, repeats: %d\n", omp_get_max_threads(), repeats);
  std::printf("%-28s %12s %12s %8s %s\n", "kernel", "serial ms", "parallel ms", "speedup", "agree");
  int mismatches = 0;
  for (const auto& c : cases) {
    ChaosReport serial;
    ChaosReport parallel;
    const double s = best_ms(c, Execution::serial, repeats, serial);
    const double p = best_ms(c, Execution::parallel, repeats, parallel);
    const bool agree = serial.data_json() == parallel.data_json();
    if (!agree) ++mismatches;
    std::printf("%-28s %12.1f %12.1f %8.2f %s\n", c.name.c_str(), s, p, s / p, agree ? "yes" : "NO");
  }
  return mismatches == 0 ? 0 : 1;
}
