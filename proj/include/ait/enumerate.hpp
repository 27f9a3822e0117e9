#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/machine.hpp"

namespace ait::machine {

struct EnumParams {
  BitString condition;
  long long step_budget = 100000;
  unsigned max_len = 20;
};

struct HaltingProgram {
  BitString code;
  BitString output;
  long long steps = 0;
};

// All programs of length <= max_len that halt consuming exactly their own
// bits, in canonical (length, then lexicographic) order. The parallel variant
// splits the program tree at a fixed frontier depth and merges per-subtree
// results back into canonical order, so the answer is identical for any
// thread count; the serial variant is the reference the tests compare against.
std::vector<HaltingProgram> enumerate_halting_serial(const EnumParams& params);
std::vector<HaltingProgram> enumerate_halting(const EnumParams& params, int threads = 0);

enum class Kind { C, K };

struct ComplexityEstimate {
  Kind kind = Kind::C;
  std::size_t value = 0;
  BitString witness;  // a program of length `value` that prints the target
  BitString conditioned_on;
  long long step_budget = 0;
  unsigned max_len = 0;
  std::string machine_version;
};

// One enumeration pass, reusable for many queries at the same condition and
// budgets. estimate() returns min(best enumerated program, literal fallback),
// ties resolved toward the canonically first program.
class ComplexityTable {
 public:
  explicit ComplexityTable(EnumParams params, int threads = 0);

  ComplexityEstimate estimate(const BitString& x, Kind kind = Kind::C) const;
  std::size_t upper(const BitString& x) const { return estimate(x).value; }
  const EnumParams& params() const { return params_; }
  const std::vector<HaltingProgram>& programs() const { return programs_; }

 private:
  EnumParams params_;
  std::vector<HaltingProgram> programs_;
  std::unordered_map<BitString, std::uint32_t, BitStringHash> best_;  // output -> index
};

ComplexityEstimate complexity_upper(const BitString& x, const BitString& condition,
                                    long long step_budget = 100000, unsigned max_len = 20,
                                    int threads = 0);

// Deficiency n - C_upper(prefix_n | n) for every prefix of w, the condition
// being the standard-correspondence rendering of n. One enumeration per n.
struct OscillationPoint {
  unsigned n = 0;
  long long deficiency = 0;
};
std::vector<OscillationPoint> oscillation_profile(const BitString& w,
                                                  long long step_budget = 100000,
                                                  unsigned max_len = 20, int threads = 0);

// Compressor-backed upper bounds (not machine programs; the compressed form
// is self-delimiting, so its length is an honest description length).
struct CompressorEstimate {
  std::string codec;
  std::size_t value = 0;
  BitString compressed;
};
class UnknownCodec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
CompressorEstimate compressor_bound(const BitString& x, const std::string& codec);
BitString rle_compress(const BitString& x);
BitString rle_decompress(const BitString& compressed);

}  // namespace ait::machine
