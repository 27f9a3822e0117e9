#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/selection.hpp"

using namespace ait;
using namespace ait::selection;

namespace {

BitString random_bits(std::mt19937_64& rng, unsigned n) {
  BitString out;
  for (unsigned i = 0; i < n; ++i) out.push_back((rng() & 1) != 0);
  return out;
}

std::vector<std::string> rule_pool() {
  return {"all",          "suffix=1",    "suffix=00",  "suffix=11",
          "ones>=2",      "zeros<3",     "len=4",      "ones=1&suffix=0",
          "suffix=1&len<6"};
}

}  // namespace

TEST_CASE("selection: a suffix rule picks the positions right after its pattern") {
  auto rule = parse_rule("suffix=11");
  auto got = select_mwc(*rule, BitString("110110"));
  REQUIRE(got.indices.size() == 2);
  CHECK(got.indices[0] == 3);
  CHECK(got.indices[1] == 6);
  CHECK(got.subsequence.str() == "00");
  CHECK(got.scanned == 6);
  CHECK(!got.truncated);
}

TEST_CASE("selection: the all rule copies the window") {
  auto got = select_mwc(*parse_rule("all"), BitString("10011"));
  CHECK(got.subsequence.str() == "10011");
  CHECK(got.indices.size() == 5);
}

TEST_CASE("selection: count rules condition on the seen prefix only") {
  // ones>=2 waits until two ones have gone past.
  auto got = select_mwc(*parse_rule("ones>=2"), BitString("101101"));
  REQUIRE(got.indices.size() == 3);
  CHECK(got.indices[0] == 4);  // after seeing 101
  CHECK(got.subsequence.str() == "101");

  // len=0 selects only the very first position.
  auto first = select_mwc(*parse_rule("len=0"), BitString("0111"));
  REQUIRE(first.indices.size() == 1);
  CHECK(first.indices[0] == 1);
  CHECK(first.subsequence.str() == "0");
}

TEST_CASE("selection: undefined decisions truncate the scan") {
  auto got = select_mwc(*parse_rule("undef-after=3"), BitString("101010"));
  CHECK(got.truncated);
  CHECK(got.scanned == 3);
  CHECK(got.subsequence.str() == "101");
  REQUIRE(got.indices.size() == 3);
  CHECK(got.indices[2] == 3);
}

TEST_CASE("selection: rule text round-trips through describe") {
  for (const auto& text : rule_pool()) {
    auto rule = parse_rule(text);
    CHECK(rule->describe() == text);
    CHECK(parse_rule(rule->describe())->describe() == text);
  }
  CHECK(parse_rule("undef-after=7")->describe() == "undef-after=7");
}

TEST_CASE("selection: malformed rules are rejected") {
  for (const char* bad : {"", "bogus", "suffix=", "suffix=21", "ones", "ones>>3", "len=",
                          "all&", "&all", "undef-after=x"})
    CHECK_THROWS_AS((void)parse_rule(bad), std::invalid_argument);
}

TEST_CASE("selection: membership of a position never depends on its own value") {
  std::mt19937_64 rng(2024);
  for (const auto& text : rule_pool()) {
    auto rule = parse_rule(text);
    for (unsigned trial = 0; trial < 25; ++trial) {
      BitString w = random_bits(rng, 10);
      auto base = select_mwc(*rule, w);
      for (unsigned i = 0; i < w.size(); ++i) {
        BitString flipped = w;
        flipped.set(i, !flipped.bit(i));
        auto alt = select_mwc(*rule, flipped);
        const bool in_base = std::find(base.indices.begin(), base.indices.end(),
                                       std::uint64_t{i + 1}) != base.indices.end();
        const bool in_alt = std::find(alt.indices.begin(), alt.indices.end(),
                                      std::uint64_t{i + 1}) != alt.indices.end();
        CAPTURE(text);
        CAPTURE(w.str());
        CAPTURE(i);
        CHECK(in_base == in_alt);
      }
    }
  }
}

TEST_CASE("selection: the reverse rule reads the window back to front") {
  auto got = select_kl(*reverse_rule(), BitString("110100"));
  REQUIRE(got.inspected.size() == 6);
  for (unsigned i = 0; i < 6; ++i) CHECK(got.inspected[i] == 6 - i);
  CHECK(got.subsequence.str() == "001011");
  CHECK(got.included == got.inspected);
}

TEST_CASE("selection: lifting a monotone rule preserves its selection") {
  std::mt19937_64 rng(77);
  auto pool = rule_pool();
  pool.push_back("undef-after=5");
  for (const auto& text : pool) {
    for (unsigned trial = 0; trial < 40; ++trial) {
      BitString w = random_bits(rng, 12);
      auto direct = select_mwc(*parse_rule(text), w);
      auto lifted = select_kl(*lift_mwc(parse_rule(text)), w);
      CAPTURE(text);
      CAPTURE(w.str());
      CHECK(direct.subsequence == lifted.subsequence);
      CHECK(direct.indices == lifted.included);
    }
  }
}

namespace {

// Looks at position 2 before deciding which neighbor to include: legal for a
// nonmonotone rule, impossible for a monotone one.
class PeekRule final : public KlRule {
 public:
  std::string describe() const override { return "peek"; }
  KlStep next(const BitString& seen, std::uint64_t n) const override {
    if (n < 3) return {0, false};
    if (seen.size() == 0) return {2, false};
    if (seen.size() == 1) return {seen.bit(0) ? std::uint64_t{1} : std::uint64_t{3}, true};
    return {0, false};
  }
};

class StutterRule final : public KlRule {
 public:
  std::string describe() const override { return "stutter"; }
  KlStep next(const BitString&, std::uint64_t) const override { return {1, true}; }
};

class OvershootRule final : public KlRule {
 public:
  std::string describe() const override { return "overshoot"; }
  KlStep next(const BitString&, std::uint64_t n) const override { return {n + 1, true}; }
};

}  // namespace

TEST_CASE("selection: a nonmonotone rule may use a later bit to steer") {
  auto a = select_kl(PeekRule(), BitString("010"));
  REQUIRE(a.inspected.size() == 2);
  CHECK(a.inspected[0] == 2);
  CHECK(a.inspected[1] == 1);  // position 2 held 1, so the rule went left
  CHECK(a.subsequence.str() == "0");

  auto b = select_kl(PeekRule(), BitString("000"));
  REQUIRE(b.inspected.size() == 2);
  CHECK(b.inspected[1] == 3);  // position 2 held 0, so the rule went right
  CHECK(b.subsequence.str() == "0");
}

TEST_CASE("selection: rule bugs surface as violations") {
  CHECK_THROWS_AS((void)select_kl(StutterRule(), BitString("10")), RuleViolation);
  CHECK_THROWS_AS((void)select_kl(OvershootRule(), BitString("10")), RuleViolation);
}

TEST_CASE("selection: frequency profile and stability") {
  auto prof = frequency_profile(BitString("1100"));
  REQUIRE(prof.size() == 4);
  CHECK(prof[0] == doctest::Approx(1.0));
  CHECK(prof[1] == doctest::Approx(1.0));
  CHECK(prof[2] == doctest::Approx(2.0 / 3.0));
  CHECK(prof[3] == doctest::Approx(0.5));

  // A one followed by strict alternation keeps the ones fraction at or above
  // one half in every prefix.
  BitString ville;
  for (unsigned i = 0; i < 1001; ++i) ville.push_back(i % 2 == 0);
  auto rep = stability_report(ville, 0.05);
  CHECK(rep.majority_throughout);
  CHECK(rep.final_fraction == doctest::Approx(501.0 / 1001.0));
  CHECK(rep.max_excursion == doctest::Approx(0.5));

  BitString dip("01");
  auto rep2 = stability_report(dip, 0.05);
  CHECK(!rep2.majority_throughout);
  CHECK(rep2.final_excursion == doctest::Approx(0.0));
  CHECK(rep2.last_outside == 1);
  CHECK(stability_report(BitString(), 0.1).length == 0);
}
