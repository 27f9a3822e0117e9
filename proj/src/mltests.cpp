#include "ait/mltests.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ait::mltests {

namespace {

namespace mp = boost::multiprecision;

class LeadingZerosTest final : public FiniteTest {
 public:
  std::string name() const override { return "leading_zeros"; }
  unsigned level(const BitString& x) const override {
    unsigned run = 0;
    while (run < x.size() && !x.bit(run)) ++run;
    return run;
  }
};

// For each distinct deviation d = |2*ones - n| present at length n, the count
// of strings whose deviation is at least d, keyed ascending by d.
struct DeviationTail {
  std::vector<std::uint64_t> dvals;
  std::vector<BigInt> count_ge;
};

const DeviationTail& deviation_tail(unsigned n) {
  static std::map<unsigned, DeviationTail> cache;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n > kFrequencyExactCap)
    throw std::invalid_argument("frequency test: length exceeds the exact-tail cap");

  std::map<std::uint64_t, BigInt> by_d;
  BigInt c = 1;  // C(n, j), advanced multiplicatively
  for (unsigned j = 0; j <= n; ++j) {
    const std::uint64_t d =
        (2 * static_cast<std::uint64_t>(j) >= n) ? 2 * static_cast<std::uint64_t>(j) - n
                                                 : n - 2 * static_cast<std::uint64_t>(j);
    by_d[d] += c;
    c = c * (n - j) / (j + 1);
  }
  DeviationTail t;
  BigInt acc = 0;
  for (auto rit = by_d.rbegin(); rit != by_d.rend(); ++rit) {
    acc += rit->second;
    t.dvals.insert(t.dvals.begin(), rit->first);
    t.count_ge.insert(t.count_ge.begin(), acc);
  }
  return cache.emplace(n, std::move(t)).first->second;
}

// #{x : l(x) = n, d(x) >= d}
BigInt count_deviation_ge(unsigned n, std::uint64_t d) {
  const auto& t = deviation_tail(n);
  auto pos = std::lower_bound(t.dvals.begin(), t.dvals.end(), d) - t.dvals.begin();
  if (static_cast<std::size_t>(pos) == t.dvals.size()) return 0;
  return t.count_ge[static_cast<std::size_t>(pos)];
}

class FrequencyTest final : public FiniteTest {
 public:
  std::string name() const override { return "frequency"; }
  unsigned level(const BitString& x) const override {
    const unsigned n = static_cast<unsigned>(x.size());
    if (n == 0) return 0;
    const std::uint64_t ones = x.count_ones();
    const std::uint64_t d = (2 * ones >= n) ? 2 * ones - n : n - 2 * ones;
    const BigInt as_extreme = count_deviation_ge(n, d);
    const unsigned bits = ceil_log2(as_extreme);
    return (bits < n) ? n - bits : 0;
  }
};

class OddPositionsTest final : public FiniteTest {
 public:
  std::string name() const override { return "odd_positions"; }
  unsigned level(const BitString& x) const override {
    unsigned i = 0;
    while (2 * i < x.size() && x.bit(2 * i)) ++i;
    return i;
  }
};

class UniversalTestLower final : public FiniteTest {
 public:
  UniversalTestLower(long long step_budget, unsigned max_len, int threads)
      : step_budget_(step_budget), max_len_(max_len), threads_(threads) {}
  std::string name() const override { return "universal_lower"; }
  unsigned level(const BitString& x) const override {
    const unsigned n = static_cast<unsigned>(x.size());
    const auto& table = table_for(n);
    const std::size_t c = table.estimate(x).value;
    return (c + 1 < n) ? n - static_cast<unsigned>(c) - 1 : 0;
  }

 private:
  const machine::ComplexityTable& table_for(unsigned n) const {
    auto it = tables_.find(n);
    if (it != tables_.end()) return it->second;
    machine::EnumParams params;
    params.condition = from_index(n);
    params.step_budget = step_budget_;
    params.max_len = max_len_;
    return tables_.emplace(n, machine::ComplexityTable(params, threads_)).first->second;
  }

  long long step_budget_;
  unsigned max_len_;
  int threads_;
  mutable std::map<unsigned, machine::ComplexityTable> tables_;
};

class EvenPositionsTest final : public SequentialTest {
 public:
  std::string name() const override { return "even_positions"; }
  unsigned prefix_level(const BitString& prefix) const override {
    for (std::size_t i = 1; i < prefix.size(); i += 2)
      if (prefix.bit(i)) return 0;
    return static_cast<unsigned>(prefix.size());
  }
};

class UniformMeasure final : public RecursiveMeasure {
 public:
  std::string name() const override { return "uniform"; }
  Dyadic mass(const BitString& x) const override {
    return Dyadic::pow2_neg(static_cast<unsigned>(x.size()));
  }
  Dyadic next_mass(const BitString&, const Dyadic& mass_x, bool) const override {
    return mass_x * Dyadic::pow2_neg(1);
  }
};

class PointMassZeros final : public RecursiveMeasure {
 public:
  std::string name() const override { return "point_mass_zeros"; }
  Dyadic mass(const BitString& x) const override {
    return x.count_ones() == 0 ? Dyadic::one() : Dyadic::zero();
  }
  Dyadic next_mass(const BitString&, const Dyadic& mass_x, bool bit) const override {
    return bit ? Dyadic::zero() : mass_x;
  }
};

class BernoulliMeasure final : public RecursiveMeasure {
 public:
  BernoulliMeasure(std::uint64_t a, unsigned k) : a_(a), k_(k) {
    if (k > 62 || a > (std::uint64_t{1} << k))
      throw std::invalid_argument("bernoulli_measure: need a / 2^k in [0, 1], k <= 62");
  }
  std::string name() const override {
    std::ostringstream os;
    os << "bernoulli(" << a_ << "/2^" << k_ << ")";
    return os.str();
  }
  Dyadic mass(const BitString& x) const override {
    const auto ones = static_cast<unsigned>(x.count_ones());
    const auto zeros = static_cast<unsigned>(x.size()) - ones;
    const BigInt num = mp::pow(BigInt(a_), ones) * mp::pow(BigInt((std::uint64_t{1} << k_) - a_), zeros);
    return Dyadic::ratio(num, k_ * static_cast<unsigned>(x.size()));
  }
  Dyadic next_mass(const BitString&, const Dyadic& mass_x, bool bit) const override {
    const std::uint64_t hits = bit ? a_ : (std::uint64_t{1} << k_) - a_;
    return mass_x * Dyadic::ratio(BigInt(hits), k_);
  }

 private:
  std::uint64_t a_;
  unsigned k_;
};

}  // namespace

Dyadic RecursiveMeasure::next_mass(const BitString& x, const Dyadic&, bool bit) const {
  BitString extended(x);
  extended.push_back(bit);
  return mass(extended);
}

std::unique_ptr<FiniteTest> leading_zeros_test() { return std::make_unique<LeadingZerosTest>(); }
std::unique_ptr<FiniteTest> frequency_test() { return std::make_unique<FrequencyTest>(); }
std::unique_ptr<FiniteTest> odd_positions_test() { return std::make_unique<OddPositionsTest>(); }

std::unique_ptr<FiniteTest> universal_test_lower(long long step_budget, unsigned max_len,
                                                 int threads) {
  return std::make_unique<UniversalTestLower>(step_budget, max_len, threads);
}

std::uint64_t frequency_threshold(unsigned n, unsigned m) {
  if (m == 0) return 0;
  if (m > n) throw std::invalid_argument("frequency_threshold: level exceeds length");
  const BigInt budget = BigInt(1) << (n - m);
  // Least t with #{d > t} <= 2^(n-m); #{d > t} = count_ge(t + 1).
  for (std::uint64_t t = 0; t <= n; ++t)
    if (count_deviation_ge(n, t + 1) <= budget) return t;
  return n;
}

std::vector<std::uint64_t> level_census(const FiniteTest& test, unsigned n) {
  if (n > 24) throw std::invalid_argument("level_census: exhaustive census capped at n = 24");
  std::vector<std::uint64_t> hist(n + 2, 0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t v = 0; v < total; ++v) {
    unsigned lev = test.level(BitString::from_value(v, n));
    ++hist[std::min<unsigned>(lev, n + 1)];
  }
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::uint64_t acc = hist[n + 1];
  for (unsigned m = n;; --m) {
    acc += hist[m];
    counts[m] = acc;
    if (m == 0) break;
  }
  return counts;
}

std::unique_ptr<SequentialTest> even_positions_test() {
  return std::make_unique<EvenPositionsTest>();
}

SequentialRun run_sequential(const SequentialTest& test, const BitString& window) {
  SequentialRun run;
  run.levels.reserve(window.size());
  for (std::size_t k = 1; k <= window.size(); ++k) {
    unsigned lev = test.prefix_level(window.prefix(k));
    run.levels.push_back(lev);
    run.sup = std::max(run.sup, lev);
  }
  return run;
}

std::unique_ptr<RecursiveMeasure> uniform_measure() { return std::make_unique<UniformMeasure>(); }
std::unique_ptr<RecursiveMeasure> point_mass_zeros() { return std::make_unique<PointMassZeros>(); }
std::unique_ptr<RecursiveMeasure> bernoulli_measure(std::uint64_t a, unsigned k) {
  return std::make_unique<BernoulliMeasure>(a, k);
}

IntegralScore integral_test_lower(const RecursiveMeasure& mu, const BitString& x,
                                  const machine::EnumParams& params, int threads) {
  machine::ComplexityTable table(params, threads);
  IntegralScore best;
  bool have = false;
  for (std::size_t k = 0; k <= x.size(); ++k) {
    const BitString y = x.prefix(k);
    const Dyadic m = mu.mass(y);
    if (m.is_zero()) {
      std::ostringstream os;
      os << "integral_test_lower: prefix of length " << k << " has zero mass under "
         << mu.name();
      throw ZeroMass(os.str());
    }
    const auto ku = static_cast<double>(table.estimate(y, machine::Kind::K).value);
    const double neg_log2 = static_cast<double>(m.exponent()) - log2_big(m.numerator());
    const double score = -ku + neg_log2;
    if (!have || score > best.score) {
      best.score = score;
      best.argmax_len = static_cast<unsigned>(k);
      have = true;
    }
  }
  return best;
}

TestRecord record_of(const FiniteTest& test, const BitString& x) {
  TestRecord r;
  r.test_name = test.name();
  r.input = x.str();
  r.length = static_cast<unsigned>(x.size());
  r.level = test.level(x);
  r.certificate = fnv1a(r.test_name + ":" + r.input + ":" + std::to_string(r.level));
  return r;
}

}  // namespace ait::mltests
