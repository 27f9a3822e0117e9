#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ait/bitstring.hpp"

namespace ait::tourney {

// A round-robin outcome on players 1..n: every unordered pair has a winner.
// The canonical encoding E lists the pairs (1,2), (1,3), ..., (1,n), (2,3),
// ..., (n-1,n) and writes 1 when the higher-numbered player dominates, so a
// tournament is exactly binom(n,2) bits.
class Tournament {
 public:
  explicit Tournament(unsigned players);  // initially lower numbers dominate
  static Tournament from_bits(const BitString& e, unsigned players);
  static Tournament random(unsigned players, std::uint64_t seed);

  unsigned players() const { return n_; }
  bool dominates(unsigned a, unsigned b) const;  // 1-based, a != b
  void set_dominates(unsigned winner, unsigned loser);
  BitString bits() const;

  friend bool operator==(const Tournament& a, const Tournament& b) {
    return a.n_ == b.n_ && a.wins_ == b.wins_;
  }
  friend bool operator!=(const Tournament& a, const Tournament& b) { return !(a == b); }

 private:
  unsigned n_;
  std::vector<std::uint8_t> wins_;  // wins_[a*n+b] = 1 iff player a+1 beats b+1
};

// Order-insensitive transitivity check: a sub-tournament is transitive
// exactly when its internal win counts are 0, 1, ..., k-1 in some order.
bool is_transitive(const Tournament& t, const std::vector<unsigned>& nodes);

// Largest transitive sub-tournament, returned in dominance-ascending order
// (each node beats all earlier ones). Among maximum-size sets the one whose
// sorted node list is lexicographically least is chosen. Branch and bound
// over dominance-ascending chains; players capped at 32.
std::vector<unsigned> largest_transitive(const Tournament& t);

// Exhaustive reference for small n: every subset, score-sequence check.
std::vector<unsigned> largest_transitive_naive(const Tournament& t);  // players <= 7

class NonTransitive : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// E' = v witness labels (node - 1, ceil(log2 n) bits each, dominance
// ascending) followed by E with the within-witness pair bits deleted; those
// bits are implied by the witness order. l(E') = l(E) + v*ceil(log2 n)
// - binom(v,2), so the rewrite only pays once the witness beats roughly
// 2 log2 n. The witness size is NOT stored: reconstruction needs it, and
// different (v, tournament) pairs can share a bit length.
struct Compressed {
  BitString bits;
  unsigned players = 0;
  unsigned witness = 0;
};
Compressed compress_with_witness(const Tournament& t,
                                 const std::vector<unsigned>& witness_ascending);
Tournament reconstruct(const BitString& eprime, unsigned players, unsigned witness);

// l(E) - l(E'): binom(v,2) - v*ceil(log2 n). Negative when the witness is
// too small to pay for its labels.
long long savings(unsigned players, unsigned witness);

// Fraction of seeded random tournaments whose largest transitive
// sub-tournament has at most `vmax` players, with a Wilson 95% interval.
struct SampleReport {
  std::uint64_t trials = 0;
  std::uint64_t within = 0;
  double fraction = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
};
SampleReport sample_and_check(unsigned players, unsigned vmax, std::uint64_t trials,
                              std::uint64_t base_seed, int threads = 0);

}  // namespace ait::tourney
