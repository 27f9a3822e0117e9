#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ait/bitstring.hpp"

namespace ait::selection {

// Monotone place selection: whether position i joins the subsequence may
// depend only on the values at positions 1..i-1. That restriction is the
// whole point: the decision structurally cannot peek at the bit it selects,
// and a property test flips single bits to confirm membership of a position
// never depends on its own value.
enum class Decision { select, skip, undefined };

class MwcRule {
 public:
  virtual ~MwcRule() = default;
  virtual std::string describe() const = 0;
  // Decide about position seen.size() + 1, given the earlier values.
  virtual Decision decide(const BitString& seen) const = 0;
};

struct MwcSelection {
  BitString subsequence;
  std::vector<std::uint64_t> indices;  // 1-based selected positions, ascending
  std::uint64_t scanned = 0;           // positions decided before any stop
  bool truncated = false;              // an undefined decision ended the scan
};
MwcSelection select_mwc(const MwcRule& rule, const BitString& window);

// Rule expressions: `all`, `suffix=BITS`, `ones OP N`, `zeros OP N`,
// `len OP N` with OP one of < <= = >= >, `undef-after=N` (undefined once N
// values have been seen), and `&`-conjunctions of the above. Conditions read
// the seen prefix; a position is selected when every conjunct agrees, and the
// scan truncates when any conjunct is undefined.
std::unique_ptr<MwcRule> parse_rule(const std::string& text);

// Nonmonotone place selection: the rule names the next position to inspect
// (1-based) and whether the value there joins the subsequence, committing
// before the value is revealed. It sees the values inspected so far, in
// inspection order, plus the window length. Index 0 stops cleanly; naming a
// position twice or past the window is a rule bug, reported as RuleViolation.
struct KlStep {
  std::uint64_t index = 0;
  bool include = false;
};

class KlRule {
 public:
  virtual ~KlRule() = default;
  virtual std::string describe() const = 0;
  virtual KlStep next(const BitString& seen_values, std::uint64_t window_len) const = 0;
};

class RuleViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct KlSelection {
  BitString subsequence;                 // included values, inspection order
  std::vector<std::uint64_t> inspected;  // every inspected index, in order
  std::vector<std::uint64_t> included;   // indices whose value was included
};
KlSelection select_kl(const KlRule& rule, const BitString& window);

// Runs the monotone rule as a nonmonotone one that inspects 1, 2, 3, ... and
// stops at the first undefined decision. Selects exactly what the monotone
// scan selects.
std::unique_ptr<KlRule> lift_mwc(std::unique_ptr<MwcRule> rule);

// Inspects the window back to front and includes everything: entry i of the
// result is the value at position n + 1 - i.
std::unique_ptr<KlRule> reverse_rule();

// Running relative frequency of ones: entry k-1 is ones(x1..xk) / k.
std::vector<double> frequency_profile(const BitString& bits);

struct StabilityReport {
  std::uint64_t length = 0;
  std::uint64_t ones = 0;
  double final_fraction = 0.0;
  double final_excursion = 0.0;     // |final_fraction - 1/2|
  double max_excursion = 0.0;       // over all prefixes
  std::uint64_t last_outside = 0;   // last k with |f_k - 1/2| > eps, 0 if none
  bool majority_throughout = false; // every prefix has ones fraction >= 1/2
};
StabilityReport stability_report(const BitString& bits, double eps);

}  // namespace ait::selection
