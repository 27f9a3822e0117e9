// Acceptance gate: nine end-to-end checks over the whole library, each
// printed as one [PASS]/[FAIL] line with its tolerance pinned right here.
// The exit status is the number of failing checks. These deliberately redo
// key results from scratch rather than trusting the unit suites.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/chaos.hpp"
#include "ait/dyadic.hpp"
#include "ait/enumerate.hpp"
#include "ait/machine.hpp"
#include "ait/mltests.hpp"
#include "ait/omega.hpp"
#include "ait/predictor.hpp"
#include "ait/selection.hpp"
#include "ait/seqstats.hpp"
#include "ait/sources.hpp"
#include "ait/tourney.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ait;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// All strings of length <= max_len, canonical order (from_index order).
std::vector<BitString> all_strings(unsigned max_len) {
  std::vector<BitString> out;
  const std::uint64_t n = (std::uint64_t{1} << (max_len + 1)) - 1;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(from_index(i));
  return out;
}

// 1. Self-delimiting codes: exhaustive round-trip, exact length laws, and
// prefix-freeness for l <= 12; the pairing round-trips for every (x, y).
Check check_codes() {
  const auto t0 = std::chrono::steady_clock::now();
  Check r;
  const auto xs = all_strings(12);

  std::unordered_set<BitString, BitStringHash> sd1_words, sd2_words;
  for (const auto& x : xs) {
    const BitString e1 = encode_sd1(x);
    const BitString e2 = encode_sd2(x);
    const BitString run = from_index(x.size());
    if (e1.size() != 2 * x.size() + 1) r.ok = false;
    if (e2.size() != x.size() + 2 * run.size() + 1) r.ok = false;
    const auto d1 = decode_sd1(e1);
    const auto d2 = decode_sd2(e2);
    if (d1.value != x || d1.consumed != e1.size()) r.ok = false;
    if (d2.value != x || d2.consumed != e2.size()) r.ok = false;
    sd1_words.insert(e1);
    sd2_words.insert(e2);
  }
  if (sd1_words.size() != xs.size() || sd2_words.size() != xs.size()) r.ok = false;
  for (const auto& words : {sd1_words, sd2_words}) {
    for (const auto& w : words) {
      for (std::size_t cut = 1; r.ok && cut < w.size(); ++cut)
        if (words.count(w.prefix(cut))) r.ok = false;
    }
  }

  const std::int64_t count = static_cast<std::int64_t>(xs.size());
  std::atomic<std::uint64_t> pair_bad{0};
  const auto pair_body = [&](std::int64_t i) {
    const BitString sd2x = encode_sd2(xs[static_cast<std::size_t>(i)]);
    std::uint64_t bad = 0;
    for (const auto& y : xs) {
      BitString p = sd2x;
      p.append(y);
      const auto parts = decode_pair(p);
      if (parts.first != xs[static_cast<std::size_t>(i)] || parts.rest != y) ++bad;
    }
    if (bad) pair_bad += bad;
  };
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) pair_body(i);
#else
  for (std::int64_t i = 0; i < count; ++i) pair_body(i);
#endif
  if (pair_bad != 0) r.ok = false;

  const double secs = seconds_since(t0);
  if (secs >= 60.0) r.ok = false;
  std::ostringstream os;
  os << xs.size() << " strings, " << xs.size() * xs.size() << " pairs, " << secs << "s (< 60s)";
  r.detail = os.str();
  return r;
}

// 2. Counting: at a fixed enumeration budget, fewer than 2^(n-m) strings of
// each length n <= 12 have a description shorter than n - m, for every m.
Check check_counting() {
  const auto t0 = std::chrono::steady_clock::now();
  Check r;
  machine::ComplexityTable table(machine::EnumParams{}, 0);
  for (unsigned n = 0; r.ok && n <= 12; ++n) {
    std::vector<std::size_t> vals;
    vals.reserve(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
      vals.push_back(table.estimate(BitString::from_value(v, n), machine::Kind::C).value);
    for (unsigned m = 0; m <= n; ++m) {
      const long long cutoff = static_cast<long long>(n) - static_cast<long long>(m);
      std::uint64_t short_ones = 0;
      for (const auto v : vals)
        if (static_cast<long long>(v) < cutoff) ++short_ones;
      if (!(short_ones < (std::uint64_t{1} << (n - m)))) r.ok = false;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 600.0) r.ok = false;
  std::ostringstream os;
  os << "table of " << table.programs().size() << " programs, n <= 12, all m, " << secs
     << "s (< 600s)";
  r.detail = os.str();
  return r;
}

// 3. Test axiom: every shipped finite test keeps its level-m census within
// 2^(n-m) for all n <= 16; the odd-positions test hits five pinned values.
Check check_test_axiom() {
  Check r;
  std::vector<std::unique_ptr<mltests::FiniteTest>> tests;
  tests.push_back(mltests::leading_zeros_test());
  tests.push_back(mltests::frequency_test());
  tests.push_back(mltests::odd_positions_test());
  tests.push_back(mltests::universal_test_lower());
  for (const auto& test : tests) {
    for (unsigned n = 0; r.ok && n <= 16; ++n) {
      const auto counts = mltests::level_census(*test, n);
      for (unsigned m = 0; m < counts.size(); ++m)
        if (counts[m] > (std::uint64_t{1} << (n - m))) r.ok = false;
    }
  }
  const auto odd = mltests::odd_positions_test();
  const std::pair<const char*, unsigned> pinned[] = {
      {"01111", 0}, {"10011", 1}, {"11011", 1}, {"10100", 2}, {"11111", 3},
  };
  for (const auto& [text, level] : pinned)
    if (odd->level(BitString(text)) != level) r.ok = false;
  r.detail = "4 tests, n <= 16, censuses within 2^(n-m); 5 pinned odd-position levels";
  return r;
}

// 4. Halting weight: the dovetailed trace is nondecreasing, identical at 1
// and 8 workers, lands strictly inside (0,1) on the exact reference value,
// and its first 12 bits decide halting up to length 12.
Check check_omega() {
  const auto t0 = std::chrono::steady_clock::now();
  Check r;
  const unsigned L = 12;
  const auto bound = machine::MachineSpec::structural_step_bound(L, BitString());
  const std::uint64_t phases = (std::uint64_t{1} << (L + 1)) + static_cast<std::uint64_t>(bound);
  const auto one_worker = omega::dovetail_omega(L, phases, 1);
  const auto eight_workers = omega::dovetail_omega(L, phases, 8);

  const auto trace_a = omega::trace_of(one_worker);
  const auto trace_b = omega::trace_of(eight_workers);
  if (trace_a.size() != trace_b.size()) r.ok = false;
  for (std::size_t i = 0; r.ok && i < trace_a.size(); ++i) {
    if (trace_a[i].phase != trace_b[i].phase || trace_a[i].halted != trace_b[i].halted ||
        trace_a[i].value != trace_b[i].value)
      r.ok = false;
  }
  Dyadic prev = Dyadic::zero();
  for (const auto& point : trace_a) {
    if (point.value < prev) r.ok = false;
    prev = point.value;
  }
  const Dyadic reference = omega::omega_reference(L);
  if (one_worker.value != reference) r.ok = false;
  if (!(Dyadic::zero() < one_worker.value && one_worker.value < Dyadic::one())) r.ok = false;

  const auto via_omega = omega::halting_set_from_omega(one_worker, L);
  const auto direct = omega::reference_halting_set(L, L);
  if (via_omega.size() != direct.size()) r.ok = false;
  for (std::size_t i = 0; r.ok && i < direct.size(); ++i)
    if (via_omega[i] != direct[i]) r.ok = false;

  const double secs = seconds_since(t0);
  if (secs >= 300.0) r.ok = false;
  std::ostringstream os;
  os << one_worker.contributors.size() << " contributors, value " << one_worker.value.to_double()
     << ", " << secs << "s (< 300s)";
  r.detail = os.str();
  return r;
}

// 5. Tournament coding: the rewrite length identity holds bit-exactly on
// 1000 random (tournament, witness) pairs; branch-and-bound matches brute
// force exhaustively for n <= 5 and on 100 random n = 7 instances; at n = 8
// the classic transitive-size cap holds in at least 1 - 1/n of samples.
Check check_tournament() {
  Check r;
  for (std::uint64_t t = 0; r.ok && t < 1000; ++t) {
    const std::uint64_t s = sources::seed_for(500, t);
    const unsigned n = 2 + static_cast<unsigned>(s % 15);
    const auto tour = tourney::Tournament::random(n, s);
    const auto witness = tourney::largest_transitive(tour);
    const auto packed = tourney::compress_with_witness(tour, witness);
    const long long expect = static_cast<long long>(tour.bits().size()) -
                             tourney::savings(n, static_cast<unsigned>(witness.size()));
    if (static_cast<long long>(packed.bits.size()) != expect) r.ok = false;
  }

  for (unsigned n = 1; r.ok && n <= 5; ++n) {
    const unsigned pairs = n * (n - 1) / 2;
    for (std::uint64_t v = 0; r.ok && v < (std::uint64_t{1} << pairs); ++v) {
      const auto tour = tourney::Tournament::from_bits(BitString::from_value(v, pairs), n);
      const auto fast = tourney::largest_transitive(tour);
      const auto naive = tourney::largest_transitive_naive(tour);
      if (fast.size() != naive.size() || !tourney::is_transitive(tour, fast)) r.ok = false;
    }
  }
  for (std::uint64_t t = 0; r.ok && t < 100; ++t) {
    const auto tour = tourney::Tournament::random(7, sources::seed_for(501, t));
    if (tourney::largest_transitive(tour).size() != tourney::largest_transitive_naive(tour).size())
      r.ok = false;
  }

  const unsigned players = 8;
  const unsigned vmax = 1 + 2 * 6;  // 1 + 2 * ceil(2 log2 8)
  const auto rep = tourney::sample_and_check(players, vmax, 1000, 502, 0);
  if (!(rep.fraction >= 1.0 - 1.0 / players)) r.ok = false;
  std::ostringstream os;
  os << "fraction " << rep.fraction << " with v <= " << vmax << ", 95% CI [" << rep.wilson_low
     << ", " << rep.wilson_high << "]";
  r.detail = os.str();
  return r;
}

// 6. Frequency and run bounds at desk scale. The first three parts hold; the
// last pins the longest-zero-run mean at n = 2^20 against the window
// (log2 n - log2 log2 n) +- 2 and is reported exactly as measured.
Check check_sequence_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  Check r;
  const std::uint64_t n = std::uint64_t{1} << 16;
  const double delta = 16.0;  // log2 n
  const double c = 8.0;
  const double ones_allow = seqstats::ones_bound(n, delta, c);

  std::vector<BitString> blocks;
  std::vector<double> allow;
  for (unsigned l = 1; l <= 3; ++l) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << l); ++v) {
      blocks.push_back(BitString::from_value(v, l));
      allow.push_back(seqstats::block_bound(n, std::ldexp(1.0, -static_cast<int>(l)),
                                            static_cast<double>(l) + 4.0, l, delta, c));
    }
  }
  unsigned strings_ok = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    auto src = sources::prng_stream(sources::seed_for(600, trial));
    BitString bits;
    for (std::uint64_t i = 0; i < n; ++i) bits.push_back(src->next());
    bool good =
        std::fabs(static_cast<double>(bits.count_ones()) - static_cast<double>(n) / 2.0) <
        ones_allow;
    for (std::size_t b = 0; good && b < blocks.size(); ++b) {
      const double ideal =
          static_cast<double>(n) * std::ldexp(1.0, -static_cast<int>(blocks[b].size()));
      const double got = static_cast<double>(seqstats::count_block_wrap(bits, blocks[b]));
      if (!(std::fabs(got - ideal) < allow[b])) good = false;
    }
    if (good) ++strings_ok;
  }
  const bool ones_and_blocks = strings_ok >= 99;
  if (!ones_and_blocks) r.ok = false;

  const std::vector<double> ms = {5, 10, 15, 20, 25, 30, 40, 50};
  bool chernoff_ok = true;
  for (const auto& point : seqstats::mc_chernoff_grid(1000, ms, 10000, 601, 0))
    if (point.empirical > point.bound) chernoff_ok = false;
  if (!chernoff_ok) r.ok = false;

  seqstats::McParams mp;
  mp.trials = 100;
  mp.n = std::uint64_t{1} << 20;
  mp.base_seed = 602;
  const auto runs = seqstats::mc_longest_zero_run(mp);
  const double target = 20.0 - std::log2(20.0);
  const bool run_in_window = std::fabs(runs.mean - target) <= 2.0;
  if (!run_in_window) r.ok = false;

  const double secs = seconds_since(t0);
  if (secs >= 600.0) r.ok = false;
  std::ostringstream os;
  os << strings_ok << "/100 strings within both bounds; chernoff "
     << (chernoff_ok ? "held" : "VIOLATED") << "; run mean " << runs.mean << " vs ["
     << target - 2.0 << ", " << target + 2.0 << "] "
     << (run_in_window ? "inside" : "OUTSIDE") << "; " << secs << "s (< 600s)";
  r.detail = os.str();
  return r;
}

// 7. Shift dynamics: a million observations replay the expansion with no
// drift, and no cheap predictor beats the fair coin beyond 0.5 +- 0.02.
Check check_chaos() {
  Check r;
  const std::uint64_t horizon = 1000000;
  auto src = sources::prng_stream(700);
  BitString expansion;
  for (std::uint64_t i = 0; i < horizon + 100; ++i) expansion.push_back(src->next());
  chaos::MicroState state(sources::prng_stream(700));
  if (state.take(horizon) != expansion.prefix(horizon)) r.ok = false;
  if (state.take(100) != expansion.substr(horizon, 100)) r.ok = false;
  if (state.age() != horizon + 100) r.ok = false;

  const std::pair<const char*, std::function<std::unique_ptr<chaos::Predictor>()>> preds[] = {
      {"constant0", [] { return chaos::constant_predictor(false); }},
      {"copy-last", [] { return chaos::copy_last_predictor(); }},
      {"majority", [] { return chaos::majority_predictor(); }},
      {"markov:3", [] { return chaos::markov_predictor(3); }},
  };
  std::ostringstream os;
  os << "1e6-step replay exact;";
  for (const auto& [name, make] : preds) {
    const auto rep = chaos::accuracy_over_seeds(make, 20, 701, 100000, 0);
    if (!(rep.mean >= 0.48 && rep.mean <= 0.52)) r.ok = false;
    os << " " << name << " " << rep.mean;
  }
  r.detail = os.str();
  return r;
}

// 8. Prediction: against either truth in a two-model class, mean cumulative
// squared error over 20 seeds at horizon 10^4 stays below ln(1/w) + 1.0;
// with the truth as sole model the trace is identically zero.
Check check_prediction() {
  Check r;
  predictor::ModelClass two({{mltests::uniform_measure(), Dyadic::pow2_neg(1)},
                             {mltests::point_mass_zeros(), Dyadic::pow2_neg(1)}});
  std::ostringstream os;
  for (std::size_t truth = 0; truth < 2; ++truth) {
    const auto rep = predictor::convergence_report(two, truth, 20, 800, 10000, 0);
    if (!(rep.mean_total < rep.reference + 1.0)) r.ok = false;
    if (!std::isfinite(rep.mean_total)) r.ok = false;
    os << "truth " << truth << ": mean " << rep.mean_total << " < " << rep.reference + 1.0
       << "; ";
  }
  predictor::ModelClass solo({{mltests::point_mass_zeros(), Dyadic::one()}});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto trace = predictor::squared_error_trace(solo, 0, sources::seed_for(801, seed), 1000);
    if (trace.total != 0.0) r.ok = false;
    for (const double v : trace.cumulative)
      if (v != 0.0) r.ok = false;
  }
  os << "sole-model traces all zero";
  r.detail = os.str();
  return r;
}

// 9. Place selection: lifting a monotone rule to the inspect-in-order
// nonmonotone form selects identical subsequences on every window of length
// <= 12; duplicate inspections are always caught; the digit-concatenation
// stream's ones frequency sits within 0.05 of 1/2 at horizon 10^5.
Check check_selection() {
  Check r;
  const auto windows = all_strings(12);
  const char* rules[] = {"all",     "suffix=1",      "suffix=01", "ones<3",
                         "zeros>=2", "len<=6",        "undef-after=5",
                         "suffix=1&ones<4"};
  for (const char* text : rules) {
    const auto mwc = selection::parse_rule(text);
    const auto lifted = selection::lift_mwc(selection::parse_rule(text));
    for (const auto& w : windows) {
      const auto direct = selection::select_mwc(*mwc, w);
      const auto via_kl = selection::select_kl(*lifted, w);
      if (direct.subsequence != via_kl.subsequence || direct.indices != via_kl.included) {
        r.ok = false;
        break;
      }
    }
    if (!r.ok) break;
  }

  struct DoubleDip : selection::KlRule {
    std::string describe() const override { return "inspects position 1 twice"; }
    selection::KlStep next(const BitString& seen, std::uint64_t) const override {
      return {1, seen.empty()};
    }
  };
  const DoubleDip bad;
  unsigned caught = 0, attempts = 0;
  for (std::uint64_t len = 2; len <= 8; ++len) {
    for (std::uint64_t v = 0; v < 4; ++v) {
      ++attempts;
      try {
        (void)selection::select_kl(bad, BitString::from_value(v, static_cast<unsigned>(len)));
      } catch (const selection::RuleViolation&) {
        ++caught;
      }
    }
  }
  if (caught != attempts) r.ok = false;

  const BitString digits(sources::champernowne_digits(2, 100000));
  const auto report = selection::stability_report(digits, 0.05);
  if (!(report.final_excursion < 0.05)) r.ok = false;

  std::ostringstream os;
  os << "8 rules x " << windows.size() << " windows agree; " << caught << "/" << attempts
     << " violations caught; excursion " << report.final_excursion << " < 0.05";
  r.detail = os.str();
  return r;
}

}  // namespace

int main() {
  const std::pair<const char*, Check (*)()> checks[] = {
      {"codes: round-trip, length laws, prefix-freeness, pairing (l <= 12)", check_codes},
      {"counting: #{x : C(x) < n - m} < 2^(n-m) for n <= 12, all m", check_counting},
      {"test axiom: level censuses within 2^(n-m) for n <= 16", check_test_axiom},
      {"halting weight: exact, monotone, worker-count invariant, decodes halting", check_omega},
      {"tournaments: rewrite identity, exact search vs brute force, size cap", check_tournament},
      {"sequence bounds: ones, blocks, tails, longest-zero-run window", check_sequence_bounds},
      {"shift dynamics: exact replay, no predictor beats the coin", check_chaos},
      {"prediction: mean error under ln(1/w) + 1.0, sole model exact", check_prediction},
      {"selection: lifting equivalence, violation detection, digit stream", check_selection},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [label, fn] : checks) {
    ++index;
    const auto result = fn();
    if (!result.ok) ++failures;
    std::cout << (result.ok ? "[PASS] " : "[FAIL] ") << index << ". " << label;
    if (!result.detail.empty()) std::cout << " -- " << result.detail;
    std::cout << "\n" << std::flush;
  }
  std::cout << (9 - failures) << "/9 criteria passed\n";
  return failures;
}
