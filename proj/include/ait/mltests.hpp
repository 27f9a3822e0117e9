#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/dyadic.hpp"
#include "ait/enumerate.hpp"

namespace ait::mltests {

// A test for finite strings assigns each string a critical level: the largest
// significance level at which the string is rejected as nonrandom. The
// defining budget is that at most a 2^-m fraction of strings of each length
// may reach level m, i.e. #{x : l(x) = n, level(x) >= m} <= 2^(n-m). Every
// builtin here satisfies that bound exactly, and level_census verifies it
// exhaustively in the tests.
class FiniteTest {
 public:
  virtual ~FiniteTest() = default;
  virtual std::string name() const = 0;
  virtual unsigned level(const BitString& x) const = 0;
};

// Rejects strings that start with a run of zeros; level = run length.
std::unique_ptr<FiniteTest> leading_zeros_test();

// Rejects strings whose ones count strays from n/2. With d(x) = |2*ones - n|,
// level(x) = max(0, n - ceil(log2 #{y : l(y) = n, d(y) >= d(x)})), the
// tightest level the exact binomial tail permits. Inputs longer than
// kFrequencyExactCap are refused: the tail is computed exactly and the
// binomial row gets too large past that.
inline constexpr unsigned kFrequencyExactCap = 4096;
std::unique_ptr<FiniteTest> frequency_test();

// Least t such that #{x : l(x) = n, d(x) > t} <= 2^(n-m). The frequency test
// reaches level m exactly when d(x) exceeds this threshold.
std::uint64_t frequency_threshold(unsigned n, unsigned m);

// Largest i such that positions 1, 3, ..., 2i-1 (1-based) are all ones.
std::unique_ptr<FiniteTest> odd_positions_test();

// Level max(0, n - C(x | n) - 1) using enumerated upper bounds on program
// length. Counting programs gives the budget for free: fewer than 2^(n-m)
// programs are shorter than n - m. Builds one table per distinct input
// length, cached. Not thread-safe across concurrent level() calls.
std::unique_ptr<FiniteTest> universal_test_lower(long long step_budget = 20000,
                                                 unsigned max_len = 16, int threads = 0);

// counts[m] = #{x : l(x) = n, level(x) >= m} for m = 0..n, by enumeration of
// all 2^n strings. The test axiom says counts[m] <= 2^(n-m).
std::vector<std::uint64_t> level_census(const FiniteTest& test, unsigned n);

// Sequential tests watch a growing prefix; the level of an infinite sequence
// is the supremum over prefixes. A finite window reports the running values.
class SequentialTest {
 public:
  virtual ~SequentialTest() = default;
  virtual std::string name() const = 0;
  virtual unsigned prefix_level(const BitString& prefix) const = 0;
};

// prefix_level = l(x) when every even position (2, 4, ...) holds a zero, else
// 0. Exactly 2^ceil(n/2) strings of length n score nonzero, so the 2^(n-m)
// budget holds for m <= floor(n/2); the tests pin both facts.
std::unique_ptr<SequentialTest> even_positions_test();

struct SequentialRun {
  std::vector<unsigned> levels;  // levels[i] is the level of the (i+1)-prefix
  unsigned sup = 0;
};
SequentialRun run_sequential(const SequentialTest& test, const BitString& window);

// A computable probability measure on the binary cylinders, exact masses.
class RecursiveMeasure {
 public:
  virtual ~RecursiveMeasure() = default;
  virtual std::string name() const = 0;
  virtual Dyadic mass(const BitString& x) const = 0;  // measure of the cylinder of x

  // Mass of the one-bit extension of x, given mass(x) already in hand.
  // Callers walking a growing prefix use this so measures with product
  // structure can extend in one small multiplication instead of recomputing.
  virtual Dyadic next_mass(const BitString& x, const Dyadic& mass_x, bool bit) const;
};

std::unique_ptr<RecursiveMeasure> uniform_measure();
std::unique_ptr<RecursiveMeasure> point_mass_zeros();
// Independent bits with P(1) = a / 2^k, a dyadic in [0, 1].
std::unique_ptr<RecursiveMeasure> bernoulli_measure(std::uint64_t a, unsigned k);

class ZeroMass : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Lower bound on the universal integral test of x against mu: the best value
// of -K(y) - log2 mu(cylinder of y) over prefixes y of x, with K replaced by
// an enumerated upper bound, so the true score is at least this. Positive
// scores certify that mu-typicality fails somewhere along x. Throws ZeroMass
// when some prefix has no mass (x then leaves mu's support, the strongest
// possible rejection).
struct IntegralScore {
  double score = 0.0;
  unsigned argmax_len = 0;  // prefix length achieving the score
};
IntegralScore integral_test_lower(const RecursiveMeasure& mu, const BitString& x,
                                  const machine::EnumParams& params = {}, int threads = 0);

// A reproducible summary of one finite-test evaluation.
struct TestRecord {
  std::string test_name;
  std::string input;
  unsigned length = 0;
  unsigned level = 0;
  std::uint64_t certificate = 0;  // fnv1a over "name:input:level"
};
TestRecord record_of(const FiniteTest& test, const BitString& x);

}  // namespace ait::mltests
