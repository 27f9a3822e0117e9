#include "ait/machine.hpp"

#include <stdexcept>

namespace ait::machine {

std::string MachineSpec::describe() {
  return "rm1 prefix register machine; opcodes: 0 halt | 10 lit nat(k) bits | "
         "110 run b nat(k) | 1110 cond | 11110 runc b | 111110 num nat(k) | "
         "1111110 cnt nat(k) | 11111110 loop; nat(k) = sd1(from_index(k)); "
         "cost: 1 step per instruction + 1 per emitted bit";
}

BitString MachineSpec::literal_program(const BitString& x) {
  BitString p("10");
  p.append(encode_sd1(from_index(x.size())));
  p.append(x);
  p.push_back(false);  // halt
  return p;
}

std::size_t MachineSpec::literal_overhead(std::size_t n) {
  return 3 + encode_sd1(from_index(n)).size();
}

BitString MachineSpec::repeat_program(bool b, std::uint64_t k) {
  BitString p("110");
  p.push_back(b);
  p.append(encode_sd1(from_index(k)));
  p.push_back(false);  // halt
  return p;
}

BitString MachineSpec::looping_program() { return BitString("11111110"); }

std::uint64_t MachineSpec::max_nat(unsigned max_len) {
  // nat(k) takes 2*l(from_index(k)) + 1 bits; find the largest index whose
  // string still fits when the whole field must fit in max_len bits.
  if (max_len == 0) return 0;
  unsigned payload = (max_len - 1) / 2;
  return (payload >= 63) ? ~0ull : (1ull << (payload + 1)) - 2;
}

long long MachineSpec::structural_step_bound(unsigned max_len, const BitString& cond) {
  // Every instruction except loop terminates, so a halting program of length
  // <= max_len executes at most max_len instructions, and each emits no more
  // than the largest single-instruction emission. Exact, if generous.
  std::uint64_t k = max_nat(max_len);
  std::uint64_t cnt_emit = 0;
  for (std::uint64_t i = 1; i <= k && i <= (1u << 20); ++i)
    cnt_emit += from_index(i).size();
  std::uint64_t cond_emit = cond.size();
  std::uint64_t runc_emit = cond.size() <= 62 ? to_index(cond) : 0;
  std::uint64_t per_instr = std::max({static_cast<std::uint64_t>(max_len), k, cnt_emit,
                                      cond_emit, runc_emit});
  return static_cast<long long>(max_len) * static_cast<long long>(1 + per_instr) + 1;
}

Execution::Execution(const BitString* condition, std::vector<std::uint8_t>* out,
                     long long budget)
    : cond_(condition), out_(out), budget_(budget) {
  if (budget < 1) throw std::invalid_argument("machine: step budget must be >= 1");
}

bool Execution::charge(long long n) {
  if (steps_ + n > budget_) {
    steps_ = budget_;
    state_ = State::budget_exhausted;
    return false;
  }
  steps_ += n;
  return true;
}

void Execution::emit(bool b) { out_->push_back(b ? 1 : 0); }

void Execution::emit_repeat(bool b, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) {
    if (!charge(1)) return;
    emit(b);
  }
}

void Execution::emit_string(const BitString& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!charge(1)) return;
    emit(s.bit(i));
  }
}

void Execution::begin_nat() {
  phase_ = Phase::nat_unary;
  ones_ = 0;
  nat_len_ = 0;
  nat_fill_ = 0;
  nat_bits_ = 0;
}

void Execution::nat_done(std::uint64_t k) {
  switch (cur_op_) {
    case Op::lit:
      if (k == 0) {
        phase_ = Phase::opcode;
        ones_ = 0;
      } else {
        lit_left_ = k;
        phase_ = Phase::lit_payload;
      }
      break;
    case Op::run:
      emit_repeat(run_value_, k);
      phase_ = Phase::opcode;
      ones_ = 0;
      break;
    case Op::num:
      emit_string(from_index(k));
      phase_ = Phase::opcode;
      ones_ = 0;
      break;
    case Op::cnt:
      for (std::uint64_t i = 1; i <= k && state_ == State::need_bit; ++i)
        emit_string(from_index(i));
      phase_ = Phase::opcode;
      ones_ = 0;
      break;
  }
}

void Execution::opcode_done(unsigned opcode) {
  if (!charge(1)) return;
  switch (opcode) {
    case 0:  // halt
      state_ = State::halted;
      return;
    case 1:  // lit
      cur_op_ = Op::lit;
      begin_nat();
      return;
    case 2:  // run
      cur_op_ = Op::run;
      phase_ = Phase::run_bit;
      return;
    case 3:  // cond
      emit_string(*cond_);
      phase_ = Phase::opcode;
      ones_ = 0;
      return;
    case 4:  // runc
      phase_ = Phase::runc_bit;
      return;
    case 5:  // num
      cur_op_ = Op::num;
      begin_nat();
      return;
    case 6:  // cnt
      cur_op_ = Op::cnt;
      begin_nat();
      return;
    case 7:  // loop
      steps_ = budget_;
      state_ = State::budget_exhausted;
      return;
    default:
      state_ = State::invalid;
      return;
  }
}

void Execution::feed(bool bit) {
  if (state_ != State::need_bit)
    throw std::logic_error("machine: feed() on a finished execution");
  switch (phase_) {
    case Phase::opcode:
      if (bit) {
        if (++ones_ == 8) state_ = State::invalid;  // 11111111
      } else {
        unsigned op = ones_;
        ones_ = 0;
        opcode_done(op);
      }
      return;
    case Phase::nat_unary:
      if (bit) {
        if (++ones_ > 62) state_ = State::invalid;  // index would overflow
      } else {
        nat_len_ = ones_;
        ones_ = 0;
        if (nat_len_ == 0) {
          nat_done(0);  // from_index payload "", k = 0
        } else {
          phase_ = Phase::nat_payload;
        }
      }
      return;
    case Phase::nat_payload:
      nat_bits_ = (nat_bits_ << 1) | (bit ? 1u : 0u);
      if (++nat_fill_ == nat_len_)
        nat_done(((1ull << nat_len_) - 1) + nat_bits_);
      return;
    case Phase::lit_payload:
      if (!charge(1)) return;
      emit(bit);
      if (--lit_left_ == 0) {
        phase_ = Phase::opcode;
        ones_ = 0;
      }
      return;
    case Phase::run_bit:
      run_value_ = bit;
      cur_op_ = Op::run;
      begin_nat();
      return;
    case Phase::runc_bit:
      if (cond_->size() > 62) {
        state_ = State::invalid;  // condition has no 64-bit index
        return;
      }
      emit_repeat(bit, to_index(*cond_));
      phase_ = Phase::opcode;
      ones_ = 0;
      return;
  }
}

RunOutcome run(const BitString& code, const BitString& condition, long long budget) {
  std::vector<std::uint8_t> buf;
  Execution ex(&condition, &buf, budget);
  std::size_t consumed = 0;
  while (consumed < code.size() && ex.state() == Execution::State::need_bit) {
    ex.feed(code.bit(consumed));
    ++consumed;
  }
  RunOutcome out;
  out.steps = ex.steps();
  out.bits_consumed = consumed;
  switch (ex.state()) {
    case Execution::State::halted: {
      out.status = RunStatus::halted;
      for (std::uint8_t b : buf) out.output.push_back(b != 0);
      break;
    }
    case Execution::State::budget_exhausted:
      out.status = RunStatus::budget_exhausted;
      break;
    case Execution::State::need_bit:  // ran off the end of the code
    case Execution::State::invalid:
      out.status = RunStatus::invalid;
      break;
  }
  return out;
}

}  // namespace ait::machine
