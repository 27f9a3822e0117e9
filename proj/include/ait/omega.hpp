#pragma once

#include <cstdint>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/dyadic.hpp"
#include "ait/enumerate.hpp"

namespace ait::omega {

// Dovetailed approximation of the halting mass over the empty condition,
// restricted to programs of at most L bits. The schedule is triangular:
// phase i spends the jth step on the kth input for all j + k = i, inputs
// being all strings in canonical order (input 1 is the empty string). The
// kernel simulates each input once and applies the schedule arithmetically:
// input k has executed max(0, phases - k) steps after `phases` phases, so a
// program halting in s steps joins the sum at phase to_index(p) + 1 + s.
struct Contributor {
  BitString program;
  long long halt_step = 0;     // steps of its own computation
  std::uint64_t join_phase = 0;
};

struct OmegaApproximation {
  Dyadic value;
  std::vector<Contributor> contributors;  // canonical program order
  unsigned max_len = 0;
  long long step_budget = 0;  // largest per-input step grant, phases - 1
  std::uint64_t phases = 0;
};

struct TracePoint {
  std::uint64_t phase = 0;
  std::uint64_t halted = 0;  // contributors counted so far
  Dyadic value;
};

class InsufficientApproximation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

OmegaApproximation dovetail_omega(unsigned max_len, std::uint64_t phases, int threads = 0);

// Join events in phase order, starting from the empty sum. Between entries
// the approximation is constant, so this is the full trace.
std::vector<TracePoint> trace_of(const OmegaApproximation& approx);

// The exact restricted halting mass: every program of length <= max_len run
// to the structural step bound, past which only the spin instruction remains.
Dyadic omega_reference(unsigned max_len, int threads = 0);
std::vector<BitString> reference_halting_set(unsigned max_len, unsigned program_len_cap,
                                             int threads = 0);

// Programs of length <= n certain to halt, recovered from an approximation
// that has reached the first n bits of the reference value. Throws
// InsufficientApproximation when the approximation is not there yet.
std::vector<BitString> halting_set_from_omega(const OmegaApproximation& approx, unsigned n,
                                              int threads = 0);

}  // namespace ait::omega
