#include <doctest.h>

#include <memory>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/dyadic.hpp"
#include "ait/machine.hpp"
#include "ait/mltests.hpp"
#include "ait/omega.hpp"
#include "ait/predictor.hpp"

using namespace ait;
using namespace ait::predictor;

namespace {

std::shared_ptr<const mltests::RecursiveMeasure> shared_uniform() {
  return mltests::uniform_measure();
}
std::shared_ptr<const mltests::RecursiveMeasure> shared_point() {
  return mltests::point_mass_zeros();
}
std::shared_ptr<const mltests::RecursiveMeasure> shared_bern(std::uint64_t a, unsigned k) {
  return mltests::bernoulli_measure(a, k);
}

ModelClass fair_and_point() {
  return ModelClass({{shared_uniform(), Dyadic::pow2_neg(1)}, {shared_point(), Dyadic::pow2_neg(1)}});
}

}  // namespace

TEST_CASE("predictor: a lone fair coin always says one half") {
  ModelClass cls({{shared_uniform(), Dyadic::one()}});
  for (const char* s : {"", "0101", "0000000000", "111"}) {
    CHECK(mixture_next(cls, BitString(s)) == Rational(1, 2));
  }
  auto post = posterior(cls, BitString("0110"));
  REQUIRE(post.size() == 1);
  CHECK(post[0] == Rational(1));
}

TEST_CASE("predictor: the point mass takes over on an all-zeros prefix") {
  ModelClass cls = fair_and_point();
  // On 0^k the chance of another 0 is (2^(k+1)+1) / (2^(k+1)+2), rising to 1.
  for (unsigned k = 0; k <= 12; ++k) {
    const BigInt t = BigInt(1) << (k + 1);
    CHECK(mixture_next(cls, BitString::zeros(k)) == Rational(t + 1, t + 2));
  }
  CHECK(mixture_next(cls, BitString()) == Rational(3, 4));
  CHECK(mixture_next(cls, BitString("0")) == Rational(5, 6));
  // One 1 kills the point mass and the fair coin is all that remains.
  CHECK(mixture_next(cls, BitString("1")) == Rational(1, 2));
  CHECK(mixture_next(cls, BitString("0001")) == Rational(1, 2));

  auto post = posterior(cls, BitString::zeros(10));
  REQUIRE(post.size() == 2);
  CHECK(post[1] == Rational(1024, 1025));
  CHECK(post[0] + post[1] == Rational(1));
}

TEST_CASE("predictor: next-bit probabilities are exact and sum to one") {
  ModelClass cls({{shared_uniform(), Dyadic::pow2_neg(2)},
                  {shared_bern(3, 2), Dyadic::pow2_neg(2)},
                  {shared_point(), Dyadic::pow2_neg(2)}});
  CHECK(cls.weight_sum() == Dyadic::ratio(3, 2));  // deficiency allowed
  for (unsigned len = 0; len <= 8; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString x = BitString::from_value(v, len);
      BitString x1(x);
      x1.push_back(true);
      const Rational p0 = mixture_next(cls, x);
      const Rational p1 =
          to_rational(cls.mixture_mass(x1)) / to_rational(cls.mixture_mass(x));
      CHECK(p0 >= 0);
      CHECK(p0 <= 1);
      CHECK(p0 + p1 == Rational(1));
      auto post = posterior(cls, x);
      Rational sum = 0;
      for (const auto& p : post) sum += p;
      CHECK(sum == Rational(1));
    }
  }
}

TEST_CASE("predictor: empty support is reported, not fudged") {
  ModelClass lone_point({{shared_point(), Dyadic::one()}});
  CHECK(mixture_next(lone_point, BitString::zeros(5)) == Rational(1));
  CHECK_THROWS_AS((void)mixture_next(lone_point, BitString("01")), mltests::ZeroMass);
  CHECK_THROWS_AS((void)posterior(lone_point, BitString("1")), mltests::ZeroMass);
}

TEST_CASE("predictor: model classes reject broken priors") {
  CHECK_THROWS_AS(ModelClass({}), std::invalid_argument);
  CHECK_THROWS_AS(ModelClass({{nullptr, Dyadic::one()}}), std::invalid_argument);
  CHECK_THROWS_AS(ModelClass({{shared_uniform(), Dyadic::zero()}}), std::invalid_argument);
  CHECK_THROWS_AS(ModelClass({{shared_uniform(), Dyadic::pow2_neg(1)},
                              {shared_point(), Dyadic::pow2_neg(1)},
                              {shared_bern(1, 1), Dyadic::pow2_neg(1)}}),
                  std::invalid_argument);
  ModelClass cls = fair_and_point();
  CHECK_THROWS_AS((void)squared_error_trace(cls, 2, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS((void)squared_error_trace(cls, 0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)convergence_report(cls, 0, 0, 1, 10), std::invalid_argument);
}

TEST_CASE("predictor: the truth as sole model leaves a flat zero trace") {
  ModelClass cls({{shared_uniform(), Dyadic::one()}});
  auto trace = squared_error_trace(cls, 0, 11, 3000);
  CHECK(trace.total == 0.0);
  REQUIRE(trace.cumulative.size() == 3000);
  for (double c : trace.cumulative) CHECK(c == 0.0);
  REQUIRE(trace.path.size() == 3000);
  // The sampled path itself should look like fair coin flips.
  CHECK(trace.path.count_ones() > 1300);
  CHECK(trace.path.count_ones() < 1700);
}

TEST_CASE("predictor: a point-mass truth pins the whole path") {
  ModelClass cls = fair_and_point();
  auto trace = squared_error_trace(cls, 1, 5, 60);
  CHECK(trace.path == BitString::zeros(60));
  CHECK(trace.total > 0.10);
  CHECK(trace.total < 0.11);
  CHECK(trace.cumulative.back() == trace.total);
  for (std::size_t i = 1; i < trace.cumulative.size(); ++i)
    CHECK(trace.cumulative[i] >= trace.cumulative[i - 1]);
  // No randomness survives when every conditional is degenerate.
  CHECK(squared_error_trace(cls, 1, 999, 60).total == trace.total);
}

TEST_CASE("predictor: mixtures track a fair truth within the weight bound") {
  ModelClass cls = fair_and_point();
  auto report = convergence_report(cls, 0, 20, 81, 10000);
  CHECK(report.seeds == 20);
  CHECK(report.reference == doctest::Approx(0.6931).epsilon(0.001));
  CHECK(report.mean_total < report.reference + 1.0);
  CHECK(report.mean_total > 0.0);
  CHECK(report.max_total < 5.0);

  auto serial = convergence_report(cls, 0, 8, 81, 2000, 1);
  auto wide = convergence_report(cls, 0, 8, 81, 2000, 8);
  CHECK(serial.mean_total == wide.mean_total);
  CHECK(serial.max_total == wide.max_total);
}

TEST_CASE("predictor: mixtures track a biased truth within the weight bound") {
  ModelClass cls({{shared_uniform(), Dyadic::pow2_neg(1)}, {shared_bern(3, 2), Dyadic::pow2_neg(2)}});
  auto report = convergence_report(cls, 1, 20, 7, 10000);
  CHECK(report.reference == doctest::Approx(1.3863).epsilon(0.001));
  CHECK(report.mean_total < report.reference + 1.0);
  CHECK(report.mean_total > 0.01);  // the fair coin does cost something early

  // Doubling the horizon barely moves the total: the errors are summable.
  auto shorter = convergence_report(cls, 1, 10, 7, 1000);
  auto longer = convergence_report(cls, 1, 10, 7, 2000);
  CHECK(longer.mean_total - shorter.mean_total < 0.05);
  CHECK(longer.mean_total >= shorter.mean_total);
}

TEST_CASE("predictor: traces only ever accumulate") {
  ModelClass cls({{shared_uniform(), Dyadic::pow2_neg(1)},
                  {shared_bern(3, 2), Dyadic::pow2_neg(2)},
                  {shared_point(), Dyadic::pow2_neg(3)}});
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto trace = squared_error_trace(cls, 1, seed, 300);
    for (std::size_t i = 1; i < trace.cumulative.size(); ++i)
      CHECK(trace.cumulative[i] >= trace.cumulative[i - 1]);
    CHECK(trace.cumulative.back() == trace.total);
  }
}

TEST_CASE("predictor: enumerated prior is a defective measure below one") {
  machine::EnumParams ep;
  ep.max_len = 12;
  ep.step_budget = 3000;
  AlgorithmicPrior prior(ep);
  CHECK(prior.program_count() > 0);

  const Dyadic whole = prior.lower(BitString());
  CHECK(whole >= Dyadic::pow2_neg(1));  // the one-bit halt alone gives 1/2
  CHECK(whole <= Dyadic::one());        // halting programs are prefix free

  for (unsigned len = 0; len <= 4; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString x = BitString::from_value(v, len);
      BitString x0(x), x1(x);
      x0.push_back(false);
      x1.push_back(true);
      Dyadic split = prior.lower(x0);
      split += prior.lower(x1);
      CHECK(split <= prior.lower(x));
    }
  }
  // Programs that print the empty string extend the root but neither child.
  Dyadic children = prior.lower(BitString("0"));
  children += prior.lower(BitString("1"));
  CHECK(children < whole);

  // A twelve-bit program prints fourteen zeros, so the prior sees 0^14.
  CHECK(prior.lower(BitString::zeros(14)) >= Dyadic::pow2_neg(12));
}

TEST_CASE("predictor: prior of the empty string is the halting weight") {
  const unsigned L = 10;
  machine::EnumParams ep;
  ep.max_len = L;
  ep.step_budget = machine::MachineSpec::structural_step_bound(L, BitString());
  AlgorithmicPrior prior(ep);
  CHECK(prior.lower(BitString()) == omega::omega_reference(L));
}
