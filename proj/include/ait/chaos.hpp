#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ait/bitstring.hpp"
#include "ait/dyadic.hpp"
#include "ait/sources.hpp"

namespace ait::chaos {

// A point of the unit interval [0,1) held as its binary expansion, most
// significant fraction bit first. The dynamics is doubling mod 1, which on
// expansions is exactly "drop the leading bit", so states are bit streams
// and nothing here ever rounds. Dyadic rationals use the expansion ending
// in zeros forever; finite inputs are zero padded to make that so.
class MicroState {
 public:
  // The source supplies the expansion from its current position onward.
  explicit MicroState(std::unique_ptr<sources::BitSource> expansion);
  MicroState(const MicroState& other);
  MicroState& operator=(const MicroState& other);
  MicroState(MicroState&&) noexcept = default;
  MicroState& operator=(MicroState&&) noexcept = default;

  static MicroState from_bits(BitString expansion);  // finite, zero tail
  static MicroState zero();                          // the fixed point 0

  // Which half of the interval the point lies in right now: false for
  // [0, 1/2), true for [1/2, 1). Equals the leading expansion bit.
  bool observe() const;

  // One time step: x -> 2x mod 1, i.e. shed the leading bit.
  void step();

  // Observe-and-step k times, returning the observables in order. This is
  // also the next k bits of the current expansion.
  BitString take(std::uint64_t k);

  std::uint64_t age() const { return age_; }  // steps taken so far

 private:
  std::unique_ptr<sources::BitSource> src_;
  mutable std::optional<bool> head_;
  std::uint64_t age_ = 0;
};

// The observable record of an orbit: the coarse readings at times
// 0, 1, ..., steps-1. By construction this equals the first `steps` bits of
// the initial expansion; the caller's state is not advanced.
BitString orbit_observables(const MicroState& start, std::uint64_t steps);

// Uniform measure of the cylinder of points whose expansion starts with x.
// The doubling map pulls the cylinder of x back to those of 0x and 1x, so
// these masses let tests confirm the measure is invariant under the map.
Dyadic cylinder_mass(const BitString& x);

// A next-observable guesser. It is shown each actual observable through
// see() and must commit to a guess for the following one via guess().
// Implementations carry whatever running summary of the history they like.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual bool guess() const = 0;
  virtual void see(bool bit) = 0;
  virtual std::string describe() const = 0;
};

std::unique_ptr<Predictor> constant_predictor(bool bit);
std::unique_ptr<Predictor> copy_last_predictor();
std::unique_ptr<Predictor> majority_predictor();  // ties guess 0
// Order-k context counter: guesses the majority continuation of the last k
// observables seen so far, ties and unseen contexts guessing 0. k <= 16.
std::unique_ptr<Predictor> markov_predictor(unsigned k);

// Fraction of correct guesses over `steps` rounds. Round t (t = 1..steps)
// shows the predictor observables 0..t-1 and scores its guess against
// observable t, so steps+1 observables are consumed. steps must be >= 1.
double evaluate_predictor(Predictor& pred, const MicroState& start, std::uint64_t steps);

struct AccuracyReport {
  std::uint64_t seeds = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Runs evaluate_predictor on orbits seeded from the fair-coin stream with
// per-trial seeds seed_for(base_seed, i). make() must yield a fresh
// predictor with no memory. Results are identical for any thread count.
AccuracyReport accuracy_over_seeds(const std::function<std::unique_ptr<Predictor>()>& make,
                                   std::uint64_t seeds, std::uint64_t base_seed,
                                   std::uint64_t steps, int threads = 0);

}  // namespace ait::chaos
