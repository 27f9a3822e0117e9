#include "ait/omega.hpp"

#include <algorithm>
#include <stdexcept>

#include "ait/machine.hpp"

namespace ait::omega {

using machine::EnumParams;
using machine::enumerate_halting;

OmegaApproximation dovetail_omega(unsigned max_len, std::uint64_t phases, int threads) {
  OmegaApproximation approx;
  approx.max_len = max_len;
  approx.phases = phases;
  approx.value = Dyadic::zero();
  if (phases < 2) return approx;  // phase i serves step j of input k only for j + k = i
  approx.step_budget = static_cast<long long>(phases - 1);

  EnumParams params;
  params.condition = BitString();
  params.step_budget = approx.step_budget;
  params.max_len = max_len;
  auto halting = enumerate_halting(params, threads);

  for (const auto& h : halting) {
    const std::uint64_t k = to_index(h.code) + 1;  // 1-based input number
    const auto grant = static_cast<long long>(phases) - static_cast<long long>(k);
    if (h.steps > grant) continue;
    Contributor c;
    c.program = h.code;
    c.halt_step = h.steps;
    c.join_phase = k + static_cast<std::uint64_t>(h.steps);
    approx.value += Dyadic::pow2_neg(c.program.size());
    approx.contributors.push_back(std::move(c));
  }
  return approx;
}

std::vector<TracePoint> trace_of(const OmegaApproximation& approx) {
  auto joined = approx.contributors;
  std::stable_sort(joined.begin(), joined.end(),
                   [](const Contributor& a, const Contributor& b) {
                     return a.join_phase < b.join_phase;
                   });
  std::vector<TracePoint> trace;
  trace.push_back({0, 0, Dyadic::zero()});
  Dyadic acc = Dyadic::zero();
  std::uint64_t halted = 0;
  for (std::size_t i = 0; i < joined.size();) {
    std::size_t j = i;
    while (j < joined.size() && joined[j].join_phase == joined[i].join_phase) {
      acc += Dyadic::pow2_neg(joined[j].program.size());
      ++j;
    }
    halted += j - i;
    trace.push_back({joined[i].join_phase, halted, acc});
    i = j;
  }
  return trace;
}

Dyadic omega_reference(unsigned max_len, int threads) {
  EnumParams params;
  params.condition = BitString();
  params.step_budget = machine::MachineSpec::structural_step_bound(max_len, BitString());
  params.max_len = max_len;
  auto halting = enumerate_halting(params, threads);
  Dyadic total = Dyadic::zero();
  for (const auto& h : halting) total += Dyadic::pow2_neg(h.code.size());
  return total;
}

std::vector<BitString> reference_halting_set(unsigned max_len, unsigned program_len_cap,
                                             int threads) {
  EnumParams params;
  params.condition = BitString();
  params.step_budget = machine::MachineSpec::structural_step_bound(max_len, BitString());
  params.max_len = max_len;
  auto halting = enumerate_halting(params, threads);
  std::vector<BitString> out;
  for (const auto& h : halting)
    if (h.code.size() <= program_len_cap) out.push_back(h.code);
  return out;
}

std::vector<BitString> halting_set_from_omega(const OmegaApproximation& approx, unsigned n,
                                              int threads) {
  if (n > approx.max_len)
    throw std::invalid_argument("halting_set_from_omega: n exceeds the enumerated length cap");
  const Dyadic reference = omega_reference(approx.max_len, threads);
  const Dyadic needed = reference.truncated(n);
  if (approx.value.compare(needed) < 0)
    throw InsufficientApproximation(
        "approximation has not yet reached the first n bits of the reference value");
  // With value >= floor(reference, n places), a halting program p of length
  // <= n missing from the contributors would leave value <= reference - 2^-n
  // < needed, so none is missing.
  std::vector<BitString> out;
  for (const auto& c : approx.contributors)
    if (c.program.size() <= n) out.push_back(c.program);
  return out;
}

}  // namespace ait::omega
