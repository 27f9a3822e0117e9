#include "ait/predictor.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "ait/sources.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ait::predictor {

Rational to_rational(const Dyadic& d) {
  return Rational(d.numerator(), BigInt(1) << d.exponent());
}

namespace {

// num/den for dyadics, in double precision, sound in the huge-exponent range.
double dyadic_ratio_double(const Dyadic& num, const Dyadic& den) {
  if (num.is_zero()) return 0.0;
  const double mantissa = big_ratio_to_double(num.numerator(), den.numerator());
  const long shift = static_cast<long>(den.exponent()) - static_cast<long>(num.exponent());
  return std::ldexp(mantissa, static_cast<int>(shift));
}

// Does a 64-bit uniform draw u fall below prob = num/den (dyadics, den > 0)?
// Exact integer comparison of u * den < 2^64 * num.
bool draw_below(std::uint64_t u, const Dyadic& num, const Dyadic& den) {
  BigInt lhs = BigInt(u) * den.numerator();
  BigInt rhs = num.numerator();
  // Align the powers of two: lhs / 2^(64 + den.exp) < rhs / 2^(num.exp).
  const unsigned le = 64 + den.exponent();
  const unsigned re = num.exponent();
  if (le > re)
    rhs <<= (le - re);
  else
    lhs <<= (re - le);
  return lhs < rhs;
}

}  // namespace

ModelClass::ModelClass(std::vector<WeightedModel> models) : models_(std::move(models)) {
  if (models_.empty()) throw std::invalid_argument("ModelClass: no models");
  for (const auto& m : models_) {
    if (!m.measure) throw std::invalid_argument("ModelClass: null measure");
    if (m.weight.is_zero()) throw std::invalid_argument("ModelClass: zero prior weight");
    weight_sum_ += m.weight;
  }
  if (weight_sum_ > Dyadic::one())
    throw std::invalid_argument("ModelClass: prior weights exceed one");
}

Dyadic ModelClass::mixture_mass(const BitString& x) const {
  Dyadic total;
  for (const auto& m : models_) total += m.weight * m.measure->mass(x);
  return total;
}

Rational mixture_next(const ModelClass& cls, const BitString& x) {
  const Dyadic mass_x = cls.mixture_mass(x);
  if (mass_x.is_zero()) throw mltests::ZeroMass("mixture_next: prefix has no mixture mass");
  BitString x0(x);
  x0.push_back(false);
  return to_rational(cls.mixture_mass(x0)) / to_rational(mass_x);
}

std::vector<Rational> posterior(const ModelClass& cls, const BitString& x) {
  const Dyadic mass_x = cls.mixture_mass(x);
  if (mass_x.is_zero()) throw mltests::ZeroMass("posterior: prefix has no mixture mass");
  const Rational denom = to_rational(mass_x);
  std::vector<Rational> out;
  out.reserve(cls.size());
  for (const auto& m : cls.models())
    out.push_back(to_rational(m.weight * m.measure->mass(x)) / denom);
  return out;
}

ErrorTrace squared_error_trace(const ModelClass& cls, std::size_t truth_index,
                               std::uint64_t seed, std::uint64_t horizon) {
  if (truth_index >= cls.size())
    throw std::invalid_argument("squared_error_trace: truth index out of range");
  if (horizon == 0) throw std::invalid_argument("squared_error_trace: zero horizon");

  const auto& models = cls.models();
  const std::size_t k = models.size();

  // Running unweighted masses mu_i(x) along the sampled path, extended one
  // bit at a time through next_mass so product measures stay cheap.
  BitString x;
  std::vector<Dyadic> mass(k);
  for (std::size_t i = 0; i < k; ++i) mass[i] = models[i].measure->mass(x);

  std::mt19937_64 engine(seed);
  ErrorTrace trace;
  trace.cumulative.reserve(horizon);

  for (std::uint64_t t = 0; t < horizon; ++t) {
    std::vector<Dyadic> mass0(k);
    Dyadic mix, mix0;
    for (std::size_t i = 0; i < k; ++i) {
      mass0[i] = models[i].measure->next_mass(x, mass[i], false);
      mix += models[i].weight * mass[i];
      mix0 += models[i].weight * mass0[i];
    }

    // Sample the next bit from the truth's exact conditional.
    const bool bit = !draw_below(engine(), mass0[truth_index], mass[truth_index]);

    const double p_mix = dyadic_ratio_double(mix0, mix);
    const double p_true = dyadic_ratio_double(mass0[truth_index], mass[truth_index]);
    const double err = p_mix - p_true;
    trace.total += err * err;
    trace.cumulative.push_back(trace.total);

    for (std::size_t i = 0; i < k; ++i)
      mass[i] = bit ? models[i].measure->next_mass(x, mass[i], true) : mass0[i];
    x.push_back(bit);
    trace.path.push_back(bit);
  }
  return trace;
}

ConvergenceReport convergence_report(const ModelClass& cls, std::size_t truth_index,
                                     std::uint64_t seeds, std::uint64_t base_seed,
                                     std::uint64_t horizon, int threads) {
  if (truth_index >= cls.size())
    throw std::invalid_argument("convergence_report: truth index out of range");
  if (seeds == 0) throw std::invalid_argument("convergence_report: zero seeds");

  std::vector<double> totals(seeds, 0.0);
  auto body = [&](std::uint64_t i) {
    totals[i] =
        squared_error_trace(cls, truth_index, sources::seed_for(base_seed, i), horizon).total;
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

  ConvergenceReport r;
  r.seeds = seeds;
  double sum = 0.0;
  for (double t : totals) {
    sum += t;
    if (t > r.max_total) r.max_total = t;
  }
  r.mean_total = sum / static_cast<double>(seeds);
  r.reference = -std::log(cls.models()[truth_index].weight.to_double());
  return r;
}

AlgorithmicPrior::AlgorithmicPrior(machine::EnumParams params, int threads)
    : params_(params), programs_(machine::enumerate_halting(params, threads)) {}

Dyadic AlgorithmicPrior::lower(const BitString& x) const {
  Dyadic total;
  for (const auto& h : programs_)
    if (x.is_prefix_of(h.output)) total += Dyadic::pow2_neg(static_cast<unsigned>(h.code.size()));
  return total;
}

}  // namespace ait::predictor
