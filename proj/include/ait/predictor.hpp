#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/dyadic.hpp"
#include "ait/enumerate.hpp"
#include "ait/mltests.hpp"

namespace ait::predictor {

// Exact rational, for the one-shot prediction queries. The sequential trace
// below stays in dyadic arithmetic instead; see squared_error_trace.
using Rational = boost::multiprecision::cpp_rational;

Rational to_rational(const Dyadic& d);

// One hypothesis and its prior weight. Weights are exact and positive.
struct WeightedModel {
  std::shared_ptr<const mltests::RecursiveMeasure> measure;
  Dyadic weight;
};

// A finite Bayesian model class: measures mu_i with prior weights w_i > 0,
// sum w_i <= 1 (a strict deficiency is allowed and carried, not renormalized).
class ModelClass {
 public:
  explicit ModelClass(std::vector<WeightedModel> models);
  const std::vector<WeightedModel>& models() const { return models_; }
  std::size_t size() const { return models_.size(); }
  const Dyadic& weight_sum() const { return weight_sum_; }

  // Mixture mass of the cylinder of x: sum_i w_i mu_i(x).
  Dyadic mixture_mass(const BitString& x) const;

 private:
  std::vector<WeightedModel> models_;
  Dyadic weight_sum_;
};

// Probability that the bit after x is 0, under the mixture: the ratio of
// mixture masses of x0 and x. Exact. Throws ZeroMass when x itself carries
// no mixture mass (no model in the class can explain x).
Rational mixture_next(const ModelClass& cls, const BitString& x);

// Posterior weight of each model given x. Sums to exactly one; the prior
// deficiency cancels in the normalization. Throws ZeroMass as above.
std::vector<Rational> posterior(const ModelClass& cls, const BitString& x);

// One sampled run of sequential prediction. The path is drawn from the truth
// model bit by bit (64-bit uniform draws compared exactly against the
// conditional, so the sampling itself never rounds); at each step the
// mixture's next-bit probability is scored against the truth's by squared
// difference. cumulative[t] is the error total after t+1 steps, so the trace
// is nondecreasing by construction; when the truth is the only model the
// trace is identically zero.
struct ErrorTrace {
  BitString path;
  std::vector<double> cumulative;
  double total = 0.0;
};
ErrorTrace squared_error_trace(const ModelClass& cls, std::size_t truth_index,
                               std::uint64_t seed, std::uint64_t horizon);

// Total squared error across seeded runs, against the classical reference
// line ln(1 / w_truth) that bounds the expected total. Per-seed runs use
// seed_for(base_seed, i) and results are identical for any thread count.
struct ConvergenceReport {
  std::uint64_t seeds = 0;
  double mean_total = 0.0;
  double max_total = 0.0;
  double reference = 0.0;
};
ConvergenceReport convergence_report(const ModelClass& cls, std::size_t truth_index,
                                     std::uint64_t seeds, std::uint64_t base_seed,
                                     std::uint64_t horizon, int threads = 0);

// Enumeration-based lower bound on the algorithmic prior: the weight
// sum 2^-l(p) over discovered halting programs whose output extends x.
// Budgeted, so every reported value is a true lower bound, and the defect
// of a semimeasure shows up as lower(x0) + lower(x1) <= lower(x).
class AlgorithmicPrior {
 public:
  explicit AlgorithmicPrior(machine::EnumParams params = {}, int threads = 0);
  Dyadic lower(const BitString& x) const;
  const machine::EnumParams& params() const { return params_; }
  std::size_t program_count() const { return programs_.size(); }

 private:
  machine::EnumParams params_;
  std::vector<machine::HaltingProgram> programs_;
};

}  // namespace ait::predictor
