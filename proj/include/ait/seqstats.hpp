#pragma once

#include <cstdint>
#include <vector>

#include "ait/bitstring.hpp"

namespace ait::seqstats {

// Slow-growing deficiency schedules, used to parameterize the bounds below.
unsigned deficiency_log2(std::uint64_t n);    // ceil(log2 n), n >= 1
unsigned deficiency_sqrt(std::uint64_t n);    // ceil(sqrt n)
unsigned deficiency_loglog(std::uint64_t n);  // ceil(log2(1 + floor(log2 n)))

// Strings whose shortest description falls at most delta + c bits under their
// length keep their ones count within this distance of n/2.
double ones_bound(std::uint64_t n, double delta, double c);

// Two-sided tail bound for a fair-or-biased coin: P(|ones - np| >= m) <=
// 2 exp(-m^2 / (4 n p (1-p))). Weaker than the exact tail, never wrong.
double chernoff_tail(std::uint64_t n, double p, double m);

// Occurrences of `block` in x read cyclically: starts 0..n-1, indices mod n.
// Summed over all 2^l blocks of one length this is exactly n.
std::uint64_t count_block_wrap(const BitString& x, const BitString& block);

// Deviation allowance for the cyclic count of one block of length l with
// ideal frequency p = 2^-l, given a description-length budget k_y for the
// block, a compressibility allowance delta, and slack c:
// sqrt(alpha n p) with alpha = (k_y + log2 l + delta + c) (1-p) l 4 ln 2.
double block_bound(std::uint64_t n, double p, double k_y, unsigned l, double delta, double c);

std::uint64_t longest_run(const BitString& x, bool bit);  // no wraparound

// How many of the 2^l blocks never occur in x, cyclic reading.
std::uint64_t missing_blocks(const BitString& x, unsigned l);

// Monte Carlo drivers. Trial i draws its bits from the fair-coin stream
// mt19937_64(seed_for(base_seed, i)), words unpacked most significant bit
// first, so results are identical for any thread count and match what a
// prng_stream source would feed the same statistic.
struct McParams {
  std::uint64_t trials = 100;
  std::uint64_t n = 1u << 16;
  std::uint64_t base_seed = 1;
  int threads = 0;
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> values;  // per trial, in trial order
};

Summary mc_longest_zero_run(const McParams& params);

// Fraction of trials whose ones count stays within ones_bound(n, delta, c).
double mc_ones_within(const McParams& params, double delta, double c);

// Fraction of trials whose cyclic count of `block` stays within block_bound.
double mc_block_within(const McParams& params, const BitString& block, double k_y,
                       double delta, double c);

struct ChernoffPoint {
  double m = 0.0;
  double empirical = 0.0;  // observed P(|ones - n/2| >= m)
  double bound = 0.0;      // chernoff_tail(n, 1/2, m)
};
std::vector<ChernoffPoint> mc_chernoff_grid(std::uint64_t n, const std::vector<double>& ms,
                                            std::uint64_t samples, std::uint64_t base_seed,
                                            int threads = 0);

}  // namespace ait::seqstats
