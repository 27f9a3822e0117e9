// Times the OpenMP kernels against their serial reference implementations
// and checks, on the spot, that both produce identical results. Wall-clock
// numbers, two timed repetitions each, fastest kept.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include "ait/bitstring.hpp"
#include "ait/chaos.hpp"
#include "ait/enumerate.hpp"
#include "ait/omega.hpp"
#include "ait/seqstats.hpp"
#include "ait/tourney.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double best_seconds(const std::function<void()>& work, int reps = 2) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    work();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const std::string& name, double serial, double parallel, bool same) {
  std::cout << name << ": serial " << serial << "s, parallel " << parallel << "s, speedup "
            << serial / parallel << "x, results " << (same ? "identical" : "DIFFER") << "\n";
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "openmp enabled, max threads " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp not available, parallel timings run the serial path\n";
#endif

  {
    ait::machine::EnumParams p;
    p.max_len = 24;
    p.step_budget = ait::machine::MachineSpec::structural_step_bound(24, ait::BitString());
    auto serial_out = ait::machine::enumerate_halting(p, 1);
    auto parallel_out = ait::machine::enumerate_halting(p, 0);
    bool same = serial_out.size() == parallel_out.size();
    for (std::size_t i = 0; same && i < serial_out.size(); ++i)
      same = serial_out[i].code == parallel_out[i].code;
    const double ts = best_seconds([&] { ait::machine::enumerate_halting(p, 1); });
    const double tp = best_seconds([&] { ait::machine::enumerate_halting(p, 0); });
    report("enumerate L=24", ts, tp, same);
  }

  {
    const unsigned L = 18;
    const std::uint64_t phases = (std::uint64_t{1} << 19) + 200000;
    const auto a = ait::omega::dovetail_omega(L, phases, 1);
    const auto b = ait::omega::dovetail_omega(L, phases, 0);
    const bool same = a.value == b.value && a.contributors.size() == b.contributors.size();
    const double ts = best_seconds([&] { ait::omega::dovetail_omega(L, phases, 1); });
    const double tp = best_seconds([&] { ait::omega::dovetail_omega(L, phases, 0); });
    report("dovetail L=18", ts, tp, same);
  }

  {
    ait::seqstats::McParams mp;
    mp.trials = 200;
    mp.n = std::uint64_t(1) << 20;
    mp.base_seed = 7;
    mp.threads = 1;
    auto pp = mp;
    pp.threads = 0;
    const auto a = ait::seqstats::mc_longest_zero_run(mp);
    const auto b = ait::seqstats::mc_longest_zero_run(pp);
    const bool same = a.values == b.values;
    const double ts = best_seconds([&] { ait::seqstats::mc_longest_zero_run(mp); });
    const double tp = best_seconds([&] { ait::seqstats::mc_longest_zero_run(pp); });
    report("longest-run mc n=2^20", ts, tp, same);
  }

  {
    const unsigned players = 16, vmax = 13;
    const std::uint64_t trials = 4000;
    const auto a = ait::tourney::sample_and_check(players, vmax, trials, 5, 1);
    const auto b = ait::tourney::sample_and_check(players, vmax, trials, 5, 0);
    const bool same = a.within == b.within;
    const double ts =
        best_seconds([&] { ait::tourney::sample_and_check(players, vmax, trials, 5, 1); });
    const double tp =
        best_seconds([&] { ait::tourney::sample_and_check(players, vmax, trials, 5, 0); });
    report("tournament sample n=16", ts, tp, same);
  }

  {
    const std::uint64_t seeds = 64, steps = 200000;
    auto make = [] { return ait::chaos::markov_predictor(3); };
    const auto a = ait::chaos::accuracy_over_seeds(make, seeds, 11, steps, 1);
    const auto b = ait::chaos::accuracy_over_seeds(make, seeds, 11, steps, 0);
    const bool same = a.mean == b.mean && a.min == b.min && a.max == b.max;
    const double ts =
        best_seconds([&] { ait::chaos::accuracy_over_seeds(make, seeds, 11, steps, 1); });
    const double tp =
        best_seconds([&] { ait::chaos::accuracy_over_seeds(make, seeds, 11, steps, 0); });
    report("predictor sweep 64 orbits", ts, tp, same);
  }

  return 0;
}
