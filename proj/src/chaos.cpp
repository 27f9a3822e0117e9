#include "ait/chaos.hpp"

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ait::chaos {

MicroState::MicroState(std::unique_ptr<sources::BitSource> expansion)
    : src_(std::move(expansion)) {
  if (!src_) throw std::invalid_argument("MicroState: null expansion source");
}

MicroState::MicroState(const MicroState& other)
    : src_(other.src_->clone()), head_(other.head_), age_(other.age_) {}

MicroState& MicroState::operator=(const MicroState& other) {
  if (this != &other) {
    src_ = other.src_->clone();
    head_ = other.head_;
    age_ = other.age_;
  }
  return *this;
}

MicroState MicroState::from_bits(BitString expansion) {
  return MicroState(sources::padded_buffer_source(std::move(expansion)));
}

MicroState MicroState::zero() { return MicroState(sources::constant_source(false)); }

bool MicroState::observe() const {
  if (!head_) head_ = src_->next();
  return *head_;
}

void MicroState::step() {
  if (head_)
    head_.reset();
  else
    (void)src_->next();
  ++age_;
}

BitString MicroState::take(std::uint64_t k) {
  BitString out;
  for (std::uint64_t i = 0; i < k; ++i) {
    out.push_back(observe());
    step();
  }
  return out;
}

BitString orbit_observables(const MicroState& start, std::uint64_t steps) {
  MicroState walker(start);
  return walker.take(steps);
}

Dyadic cylinder_mass(const BitString& x) { return Dyadic::pow2_neg(x.size()); }

namespace {

class ConstantPredictor final : public Predictor {
 public:
  explicit ConstantPredictor(bool bit) : bit_(bit) {}
  bool guess() const override { return bit_; }
  void see(bool) override {}
  std::string describe() const override { return bit_ ? "constant-1" : "constant-0"; }

 private:
  bool bit_;
};

class CopyLastPredictor final : public Predictor {
 public:
  bool guess() const override { return last_; }
  void see(bool bit) override { last_ = bit; }
  std::string describe() const override { return "copy-last"; }

 private:
  bool last_ = false;
};

class MajorityPredictor final : public Predictor {
 public:
  bool guess() const override { return 2 * ones_ > seen_; }
  void see(bool bit) override {
    ++seen_;
    if (bit) ++ones_;
  }
  std::string describe() const override { return "majority"; }

 private:
  std::uint64_t seen_ = 0;
  std::uint64_t ones_ = 0;
};

class MarkovPredictor final : public Predictor {
 public:
  explicit MarkovPredictor(unsigned k) : k_(k), counts_(std::size_t{1} << k) {
    if (k > 16) throw std::invalid_argument("markov_predictor: order above 16");
  }

  bool guess() const override {
    if (seen_ < k_) return false;
    const auto& c = counts_[context_];
    return c[1] > c[0];
  }

  void see(bool bit) override {
    if (seen_ >= k_) ++counts_[context_][bit ? 1 : 0];
    const std::uint64_t mask = (k_ == 0) ? 0 : ((std::uint64_t{1} << k_) - 1);
    context_ = ((context_ << 1) | (bit ? 1 : 0)) & mask;
    ++seen_;
  }

  std::string describe() const override { return "markov-" + std::to_string(k_); }

 private:
  unsigned k_;
  std::uint64_t context_ = 0;
  std::uint64_t seen_ = 0;
  std::vector<std::array<std::uint64_t, 2>> counts_;
};

}  // namespace

std::unique_ptr<Predictor> constant_predictor(bool bit) {
  return std::make_unique<ConstantPredictor>(bit);
}
std::unique_ptr<Predictor> copy_last_predictor() { return std::make_unique<CopyLastPredictor>(); }
std::unique_ptr<Predictor> majority_predictor() { return std::make_unique<MajorityPredictor>(); }
std::unique_ptr<Predictor> markov_predictor(unsigned k) {
  return std::make_unique<MarkovPredictor>(k);
}

double evaluate_predictor(Predictor& pred, const MicroState& start, std::uint64_t steps) {
  if (steps == 0) throw std::invalid_argument("evaluate_predictor: zero rounds");
  MicroState walker(start);
  bool actual = walker.observe();
  walker.step();
  pred.see(actual);
  std::uint64_t correct = 0;
  for (std::uint64_t t = 0; t < steps; ++t) {
    const bool g = pred.guess();
    actual = walker.observe();
    walker.step();
    if (g == actual) ++correct;
    pred.see(actual);
  }
  return static_cast<double>(correct) / static_cast<double>(steps);
}

AccuracyReport accuracy_over_seeds(const std::function<std::unique_ptr<Predictor>()>& make,
                                   std::uint64_t seeds, std::uint64_t base_seed,
                                   std::uint64_t steps, int threads) {
  if (seeds == 0) throw std::invalid_argument("accuracy_over_seeds: zero seeds");
  std::vector<double> acc(seeds, 0.0);
  auto body = [&](std::uint64_t i) {
    MicroState state(sources::prng_stream(sources::seed_for(base_seed, i)));
    auto pred = make();
    acc[i] = evaluate_predictor(*pred, state, steps);
  };
#ifdef _OPENMP
  if (threads != 1) {
    const int want = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(want)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(seeds); ++i)
      body(static_cast<std::uint64_t>(i));
  } else {
    for (std::uint64_t i = 0; i < seeds; ++i) body(i);
  }
#else
  (void)threads;
  for (std::uint64_t i = 0; i < seeds; ++i) body(i);
#endif
  AccuracyReport r;
  r.seeds = seeds;
  r.min = acc[0];
  r.max = acc[0];
  double sum = 0.0;
  for (double a : acc) {
    sum += a;
    if (a < r.min) r.min = a;
    if (a > r.max) r.max = a;
  }
  r.mean = sum / static_cast<double>(seeds);
  return r;
}

}  // namespace ait::chaos
