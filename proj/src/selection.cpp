#include "ait/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace ait::selection {

namespace {

class AllRule final : public MwcRule {
 public:
  std::string describe() const override { return "all"; }
  Decision decide(const BitString&) const override { return Decision::select; }
};

class SuffixRule final : public MwcRule {
 public:
  explicit SuffixRule(BitString suffix) : suffix_(std::move(suffix)) {}
  std::string describe() const override { return "suffix=" + suffix_.str(); }
  Decision decide(const BitString& seen) const override {
    if (seen.size() < suffix_.size()) return Decision::skip;
    for (std::size_t i = 0; i < suffix_.size(); ++i)
      if (seen.bit(seen.size() - suffix_.size() + i) != suffix_.bit(i)) return Decision::skip;
    return Decision::select;
  }

 private:
  BitString suffix_;
};

enum class Cmp { lt, le, eq, ge, gt };
enum class Stat { ones, zeros, len };

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "=";
    case Cmp::ge: return ">=";
    default: return ">";
  }
}

class CountRule final : public MwcRule {
 public:
  CountRule(Stat stat, Cmp cmp, std::uint64_t bound) : stat_(stat), cmp_(cmp), bound_(bound) {}
  std::string describe() const override {
    std::ostringstream os;
    os << (stat_ == Stat::ones ? "ones" : stat_ == Stat::zeros ? "zeros" : "len")
       << cmp_text(cmp_) << bound_;
    return os.str();
  }
  Decision decide(const BitString& seen) const override {
    const std::uint64_t ones = seen.count_ones();
    const std::uint64_t v = stat_ == Stat::ones    ? ones
                            : stat_ == Stat::zeros ? seen.size() - ones
                                                   : seen.size();
    bool hold = false;
    switch (cmp_) {
      case Cmp::lt: hold = v < bound_; break;
      case Cmp::le: hold = v <= bound_; break;
      case Cmp::eq: hold = v == bound_; break;
      case Cmp::ge: hold = v >= bound_; break;
      case Cmp::gt: hold = v > bound_; break;
    }
    return hold ? Decision::select : Decision::skip;
  }

 private:
  Stat stat_;
  Cmp cmp_;
  std::uint64_t bound_;
};

class UndefAfterRule final : public MwcRule {
 public:
  explicit UndefAfterRule(std::uint64_t cap) : cap_(cap) {}
  std::string describe() const override {
    return "undef-after=" + std::to_string(cap_);
  }
  Decision decide(const BitString& seen) const override {
    return seen.size() >= cap_ ? Decision::undefined : Decision::select;
  }

 private:
  std::uint64_t cap_;
};

class AndRule final : public MwcRule {
 public:
  explicit AndRule(std::vector<std::unique_ptr<MwcRule>> parts) : parts_(std::move(parts)) {}
  std::string describe() const override {
    std::string out;
    for (const auto& p : parts_) {
      if (!out.empty()) out += "&";
      out += p->describe();
    }
    return out;
  }
  Decision decide(const BitString& seen) const override {
    bool all_select = true;
    for (const auto& p : parts_) {
      switch (p->decide(seen)) {
        case Decision::undefined: return Decision::undefined;
        case Decision::skip: all_select = false; break;
        case Decision::select: break;
      }
    }
    return all_select ? Decision::select : Decision::skip;
  }

 private:
  std::vector<std::unique_ptr<MwcRule>> parts_;
};

std::uint64_t parse_bound(const std::string& text, const std::string& whole) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("rule '" + whole + "': bad number '" + text + "'");
  return std::strtoull(text.c_str(), nullptr, 10);
}

std::unique_ptr<MwcRule> parse_term(const std::string& term, const std::string& whole) {
  if (term == "all") return std::make_unique<AllRule>();
  if (term.rfind("suffix=", 0) == 0) {
    const std::string bits = term.substr(7);
    if (bits.empty() || bits.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("rule '" + whole + "': suffix needs bits after '='");
    return std::make_unique<SuffixRule>(BitString(bits));
  }
  if (term.rfind("undef-after=", 0) == 0)
    return std::make_unique<UndefAfterRule>(parse_bound(term.substr(12), whole));
  for (auto [name, stat] : {std::pair<const char*, Stat>{"ones", Stat::ones},
                            {"zeros", Stat::zeros},
                            {"len", Stat::len}}) {
    const std::string prefix = name;
    if (term.rfind(prefix, 0) != 0) continue;
    std::string rest = term.substr(prefix.size());
    Cmp cmp;
    if (rest.rfind("<=", 0) == 0) {
      cmp = Cmp::le;
      rest = rest.substr(2);
    } else if (rest.rfind(">=", 0) == 0) {
      cmp = Cmp::ge;
      rest = rest.substr(2);
    } else if (rest.rfind("<", 0) == 0) {
      cmp = Cmp::lt;
      rest = rest.substr(1);
    } else if (rest.rfind(">", 0) == 0) {
      cmp = Cmp::gt;
      rest = rest.substr(1);
    } else if (rest.rfind("=", 0) == 0) {
      cmp = Cmp::eq;
      rest = rest.substr(1);
    } else {
      throw std::invalid_argument("rule '" + whole + "': expected a comparison after '" +
                                  prefix + "'");
    }
    return std::make_unique<CountRule>(stat, cmp, parse_bound(rest, whole));
  }
  throw std::invalid_argument("rule '" + whole + "': unknown term '" + term + "'");
}

class LiftedRule final : public KlRule {
 public:
  explicit LiftedRule(std::unique_ptr<MwcRule> inner) : inner_(std::move(inner)) {}
  std::string describe() const override { return "lifted(" + inner_->describe() + ")"; }
  KlStep next(const BitString& seen_values, std::uint64_t window_len) const override {
    // Having inspected 1..m in order, the seen values are exactly the prefix
    // the monotone rule conditions on.
    const std::uint64_t m = seen_values.size();
    if (m >= window_len) return {0, false};
    switch (inner_->decide(seen_values)) {
      case Decision::undefined: return {0, false};
      case Decision::select: return {m + 1, true};
      case Decision::skip: return {m + 1, false};
    }
    return {0, false};
  }

 private:
  std::unique_ptr<MwcRule> inner_;
};

class ReverseRule final : public KlRule {
 public:
  std::string describe() const override { return "reverse"; }
  KlStep next(const BitString& seen_values, std::uint64_t window_len) const override {
    const std::uint64_t m = seen_values.size();
    if (m >= window_len) return {0, false};
    return {window_len - m, true};
  }
};

}  // namespace

MwcSelection select_mwc(const MwcRule& rule, const BitString& window) {
  MwcSelection out;
  BitString seen;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Decision d = rule.decide(seen);
    if (d == Decision::undefined) {
      out.truncated = true;
      out.scanned = i;
      return out;
    }
    if (d == Decision::select) {
      out.subsequence.push_back(window.bit(i));
      out.indices.push_back(i + 1);
    }
    seen.push_back(window.bit(i));
  }
  out.scanned = window.size();
  return out;
}

std::unique_ptr<MwcRule> parse_rule(const std::string& text) {
  std::vector<std::unique_ptr<MwcRule>> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t amp = text.find('&', start);
    const std::string term =
        text.substr(start, amp == std::string::npos ? std::string::npos : amp - start);
    parts.push_back(parse_term(term, text));
    if (amp == std::string::npos) break;
    start = amp + 1;
  }
  if (parts.size() == 1) return std::move(parts.front());
  return std::make_unique<AndRule>(std::move(parts));
}

KlSelection select_kl(const KlRule& rule, const BitString& window) {
  KlSelection out;
  BitString seen;
  std::unordered_set<std::uint64_t> used;
  for (;;) {
    const KlStep step = rule.next(seen, window.size());
    if (step.index == 0) return out;
    if (step.index > window.size())
      throw RuleViolation(rule.describe() + ": inspected position " +
                          std::to_string(step.index) + " beyond the window");
    if (!used.insert(step.index).second)
      throw RuleViolation(rule.describe() + ": inspected position " +
                          std::to_string(step.index) + " twice");
    const bool value = window.bit(step.index - 1);
    out.inspected.push_back(step.index);
    if (step.include) {
      out.subsequence.push_back(value);
      out.included.push_back(step.index);
    }
    seen.push_back(value);
  }
}

std::unique_ptr<KlRule> lift_mwc(std::unique_ptr<MwcRule> rule) {
  return std::make_unique<LiftedRule>(std::move(rule));
}

std::unique_ptr<KlRule> reverse_rule() { return std::make_unique<ReverseRule>(); }

std::vector<double> frequency_profile(const BitString& bits) {
  std::vector<double> out;
  out.reserve(bits.size());
  std::uint64_t ones = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits.bit(k)) ++ones;
    out.push_back(static_cast<double>(ones) / static_cast<double>(k + 1));
  }
  return out;
}

StabilityReport stability_report(const BitString& bits, double eps) {
  StabilityReport r;
  r.length = bits.size();
  r.majority_throughout = bits.size() > 0;
  std::uint64_t ones = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits.bit(k)) ++ones;
    const double f = static_cast<double>(ones) / static_cast<double>(k + 1);
    const double exc = std::fabs(f - 0.5);
    r.max_excursion = std::max(r.max_excursion, exc);
    if (exc > eps) r.last_outside = k + 1;
    if (2 * ones < k + 1) r.majority_throughout = false;
    if (k + 1 == bits.size()) {
      r.final_fraction = f;
      r.final_excursion = exc;
    }
  }
  r.ones = ones;
  return r;
}

}  // namespace ait::selection
