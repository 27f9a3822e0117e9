#include "ait/seqstats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ait/sources.hpp"

namespace ait::seqstats {

namespace {

// Fair-coin bits for one trial, matching the prng_stream unpacking.
class TrialBits {
 public:
  explicit TrialBits(std::uint64_t seed) : engine_(seed) {}
  bool next() {
    if (fill_ == 0) {
      word_ = engine_();
      fill_ = 64;
    }
    --fill_;
    return (word_ >> fill_) & 1;
  }
  std::uint64_t ones_of(std::uint64_t n) {
    std::uint64_t ones = 0;
    std::uint64_t left = n;
    while (left > 0 && fill_ > 0) {
      ones += next() ? 1 : 0;
      --left;
    }
    while (left >= 64) {
      ones += static_cast<std::uint64_t>(std::popcount(engine_()));
      left -= 64;
    }
    for (; left > 0; --left) ones += next() ? 1 : 0;
    return ones;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  unsigned fill_ = 0;
};

template <typename Fn>
void parallel_trials(std::uint64_t trials, int threads, Fn&& body) {
#ifdef _OPENMP
  if (threads != 1) {
    const auto count = static_cast<long long>(trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (long long i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
    return;
  }
#else
  (void)threads;
#endif
  for (std::uint64_t i = 0; i < trials; ++i) body(i);
}

Summary summarize(std::vector<double> values) {
  Summary s;
  s.values = std::move(values);
  if (s.values.empty()) return s;
  s.min = s.values[0];
  s.max = s.values[0];
  double sum = 0.0;
  for (double v : s.values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(s.values.size());
  double ss = 0.0;
  for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(s.values.size()));
  return s;
}

}  // namespace

unsigned deficiency_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("deficiency_log2: n must be positive");
  unsigned b = static_cast<unsigned>(std::bit_width(n));
  return (n == (std::uint64_t{1} << (b - 1))) ? b - 1 : b;
}

unsigned deficiency_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  while (r * r < n) ++r;
  return static_cast<unsigned>(r);
}

unsigned deficiency_loglog(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("deficiency_loglog: n must be positive");
  const std::uint64_t inner = 1 + static_cast<std::uint64_t>(std::bit_width(n)) - 1;
  return deficiency_log2(inner);
}

double ones_bound(std::uint64_t n, double delta, double c) {
  return std::sqrt((delta + c) * static_cast<double>(n) * std::log(2.0));
}

double chernoff_tail(std::uint64_t n, double p, double m) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("chernoff_tail: p must be in (0,1)");
  const double npq = static_cast<double>(n) * p * (1.0 - p);
  return 2.0 * std::exp(-(m * m) / (4.0 * npq));
}

std::uint64_t count_block_wrap(const BitString& x, const BitString& block) {
  const std::size_t n = x.size();
  const std::size_t l = block.size();
  if (l == 0 || l > n)
    throw std::invalid_argument("count_block_wrap: block length must be in 1..l(x)");
  std::uint64_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    bool match = true;
    for (std::size_t j = 0; j < l; ++j) {
      std::size_t idx = s + j;
      if (idx >= n) idx -= n;
      if (x.bit(idx) != block.bit(j)) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

double block_bound(std::uint64_t n, double p, double k_y, unsigned l, double delta, double c) {
  if (l == 0) throw std::invalid_argument("block_bound: block length must be positive");
  const double alpha =
      (k_y + std::log2(static_cast<double>(l)) + delta + c) * (1.0 - p) * l * 4.0 * std::log(2.0);
  return std::sqrt(alpha * static_cast<double>(n) * p);
}

std::uint64_t longest_run(const BitString& x, bool bit) {
  std::uint64_t best = 0, run = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.bit(i) == bit) {
      ++run;
      best = std::max(best, run);
    } else {
      run = 0;
    }
  }
  return best;
}

std::uint64_t missing_blocks(const BitString& x, unsigned l) {
  if (l == 0 || l > 24 || l > x.size())
    throw std::invalid_argument("missing_blocks: need 1 <= l <= min(24, l(x))");
  std::vector<bool> seen(std::size_t{1} << l, false);
  const std::size_t n = x.size();
  std::uint64_t window = 0;
  const std::uint64_t mask = (std::uint64_t{1} << l) - 1;
  // Prime with the first l-1 bits, then slide over all n cyclic starts.
  for (std::size_t i = 0; i < l - 1u; ++i) window = (window << 1) | (x.bit(i) ? 1 : 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t idx = s + l - 1;
    if (idx >= n) idx -= n;
    window = ((window << 1) | (x.bit(idx) ? 1 : 0)) & mask;
    seen[window] = true;
  }
  std::uint64_t missing = 0;
  for (bool b : seen)
    if (!b) ++missing;
  return missing;
}

Summary mc_longest_zero_run(const McParams& params) {
  std::vector<double> values(params.trials, 0.0);
  parallel_trials(params.trials, params.threads, [&](std::uint64_t i) {
    TrialBits bits(sources::seed_for(params.base_seed, i));
    std::uint64_t best = 0, run = 0;
    for (std::uint64_t k = 0; k < params.n; ++k) {
      if (!bits.next()) {
        ++run;
        best = std::max(best, run);
      } else {
        run = 0;
      }
    }
    values[i] = static_cast<double>(best);
  });
  return summarize(std::move(values));
}

double mc_ones_within(const McParams& params, double delta, double c) {
  const double bound = ones_bound(params.n, delta, c);
  std::vector<char> ok(params.trials, 0);
  parallel_trials(params.trials, params.threads, [&](std::uint64_t i) {
    TrialBits bits(sources::seed_for(params.base_seed, i));
    const std::uint64_t ones = bits.ones_of(params.n);
    const double dev = std::fabs(static_cast<double>(ones) - static_cast<double>(params.n) / 2.0);
    ok[i] = dev <= bound ? 1 : 0;
  });
  std::uint64_t hits = 0;
  for (char v : ok) hits += v;
  return static_cast<double>(hits) / static_cast<double>(params.trials);
}

double mc_block_within(const McParams& params, const BitString& block, double k_y,
                       double delta, double c) {
  const unsigned l = static_cast<unsigned>(block.size());
  const double p = std::pow(2.0, -static_cast<double>(l));
  const double bound = block_bound(params.n, p, k_y, l, delta, c);
  std::vector<char> ok(params.trials, 0);
  parallel_trials(params.trials, params.threads, [&](std::uint64_t i) {
    TrialBits bits(sources::seed_for(params.base_seed, i));
    BitString window;
    for (std::uint64_t k = 0; k < params.n; ++k) window.push_back(bits.next());
    const double count = static_cast<double>(count_block_wrap(window, block));
    const double dev = std::fabs(count - static_cast<double>(params.n) * p);
    ok[i] = dev <= bound ? 1 : 0;
  });
  std::uint64_t hits = 0;
  for (char v : ok) hits += v;
  return static_cast<double>(hits) / static_cast<double>(params.trials);
}

std::vector<ChernoffPoint> mc_chernoff_grid(std::uint64_t n, const std::vector<double>& ms,
                                            std::uint64_t samples, std::uint64_t base_seed,
                                            int threads) {
  std::vector<double> deviations(samples, 0.0);
  parallel_trials(samples, threads, [&](std::uint64_t i) {
    TrialBits bits(sources::seed_for(base_seed, i));
    const std::uint64_t ones = bits.ones_of(n);
    deviations[i] = std::fabs(static_cast<double>(ones) - static_cast<double>(n) / 2.0);
  });
  std::vector<ChernoffPoint> out;
  out.reserve(ms.size());
  for (double m : ms) {
    std::uint64_t hits = 0;
    for (double d : deviations)
      if (d >= m) ++hits;
    out.push_back({m, static_cast<double>(hits) / static_cast<double>(samples),
                   chernoff_tail(n, 0.5, m)});
  }
  return out;
}

}  // namespace ait::seqstats
