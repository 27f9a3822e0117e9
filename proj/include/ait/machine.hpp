#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ait/bitstring.hpp"

namespace ait::machine {

// rm1 is a fixed prefix register machine. The program is the input tape: bits
// are consumed left to right, there is no end-of-input marker, and a run only
// counts as a halting computation when a halt instruction executes. Because
// execution is deterministic in the bits consumed, the set of halting inputs
// (with "consumed exactly" bookkeeping done by callers such as the
// enumerator) is prefix-free by construction.
//
// Instruction stream, opcodes first (a complete prefix code):
//
//   0         halt
//   10        lit   nat(k), then k raw bits     emit those k bits
//   110       run   b, nat(k)                   emit b repeated k times
//   1110      cond                              emit the condition string
//   11110     runc  b                           emit b repeated N times,
//                                               N = index of the condition
//   111110    num   nat(k)                      emit string number k
//   1111110   cnt   nat(k)                      emit strings 1..k, concatenated
//   11111110  loop                              spin forever
//   11111111  (invalid)
//
// nat(k) = sd1(from_index(k)), so nat costs 2*l(from_index(k)) + 1 bits.
// String numbering is the standard correspondence in bitstring.hpp.
//
// Cost model: one step when an opcode completes decoding, one step per
// emitted bit. loop eats whatever budget remains. Outcomes are monotone in
// the budget: once a run halts it halts identically under any larger budget.
inline constexpr const char* kMachineVersion = "rm1";

enum class RunStatus { halted, budget_exhausted, invalid };

struct RunOutcome {
  RunStatus status = RunStatus::invalid;
  BitString output;  // meaningful only when halted
  long long steps = 0;
  std::size_t bits_consumed = 0;
};

struct MachineSpec {
  static const char* version() { return kMachineVersion; }
  static std::string describe();

  // The always-available fallback program "lit nat(l(x)) x halt" and its
  // overhead over l(x). The overhead is 3 + l(nat(l(x))): not one global
  // constant, since a prefix machine must self-delimit the payload length.
  static BitString literal_program(const BitString& x);
  static std::size_t literal_overhead(std::size_t n);

  static BitString repeat_program(bool b, std::uint64_t k);  // run b k times; halt
  static BitString looping_program();                        // the loop opcode

  // Largest k a nat field can carry in a program of at most max_len bits.
  static std::uint64_t max_nat(unsigned max_len);
  // Steps sufficient for every halting program of length <= max_len running
  // with condition `cond` to halt. Exact arithmetic over the cost model.
  static long long structural_step_bound(unsigned max_len, const BitString& cond);
};

// Runs `code` as a complete program. Throws std::invalid_argument on
// budget < 1. Status invalid covers both junk opcodes and running off the end
// of the code; both count as non-halting. A run that halts before consuming
// all of `code` reports halted with bits_consumed < code.size(): it is the
// consumed prefix, not `code`, that is the halting program.
RunOutcome run(const BitString& code, const BitString& condition, long long budget);

// Resumable single-computation engine. feed() hands the machine one more
// input bit and advances execution as far as it can go without another bit.
// Copies are cheap and share the caller-owned output buffer, which makes the
// depth-first enumeration over the program tree a matter of snapshotting
// before each branch and truncating the buffer on backtrack.
class Execution {
 public:
  enum class State : std::uint8_t { need_bit, halted, budget_exhausted, invalid };

  Execution(const BitString* condition, std::vector<std::uint8_t>* out, long long budget);

  State state() const { return state_; }
  long long steps() const { return steps_; }
  void set_output(std::vector<std::uint8_t>* out) { out_ = out; }

  void feed(bool bit);

 private:
  enum class Phase : std::uint8_t {
    opcode,
    nat_unary,
    nat_payload,
    lit_payload,
    run_bit,
    runc_bit,
  };
  enum class Op : std::uint8_t { lit, run, num, cnt };

  const BitString* cond_;
  std::vector<std::uint8_t>* out_;
  long long budget_;
  long long steps_ = 0;
  State state_ = State::need_bit;

  Phase phase_ = Phase::opcode;
  Op cur_op_ = Op::lit;
  unsigned ones_ = 0;            // run of 1s in the field being decoded
  unsigned nat_len_ = 0;         // payload length of the nat in progress
  unsigned nat_fill_ = 0;        // payload bits already read
  std::uint64_t nat_bits_ = 0;   // payload bits, most significant first
  std::uint64_t lit_left_ = 0;   // raw bits still owed to lit
  bool run_value_ = false;       // the b operand of run/runc

  bool charge(long long n);      // false once the budget is gone
  void emit(bool b);
  void emit_repeat(bool b, std::uint64_t k);
  void emit_string(const BitString& s);
  void nat_done(std::uint64_t k);
  void opcode_done(unsigned opcode);
  void begin_nat();
};

}  // namespace ait::machine
