#include "ait/tourney.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ait/sources.hpp"

namespace ait::tourney {

namespace {

unsigned label_width(unsigned players) {
  return players <= 1 ? 0 : static_cast<unsigned>(std::bit_width(players - 1u));
}

std::uint64_t pair_count(unsigned n) { return std::uint64_t{n} * (n - 1) / 2; }

void check_player(const Tournament& t, unsigned p) {
  if (p < 1 || p > t.players())
    throw std::invalid_argument("tournament: player index out of range");
}

struct TransitiveSearch {
  const Tournament& t;
  unsigned n;
  std::vector<unsigned> best_seq;     // dominance ascending
  std::vector<unsigned> best_sorted;  // same nodes, ascending numbers

  void consider(const std::vector<unsigned>& seq) {
    std::vector<unsigned> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (seq.size() > best_seq.size() ||
        (seq.size() == best_seq.size() && sorted < best_sorted)) {
      best_seq = seq;
      best_sorted = std::move(sorted);
    }
  }

  // cands: nodes beating every node of seq. Chains grow by appending a node
  // that dominates the whole chain, which enumerates each transitive set
  // exactly once (in its dominance order).
  void grow(std::vector<unsigned>& seq, std::uint64_t cands) {
    consider(seq);
    if (seq.size() + static_cast<std::size_t>(std::popcount(cands)) < best_seq.size()) return;
    for (unsigned u = 1; u <= n; ++u) {
      if (!(cands & (std::uint64_t{1} << (u - 1)))) continue;
      std::uint64_t narrowed = 0;
      for (unsigned w = 1; w <= n; ++w)
        if (w != u && (cands & (std::uint64_t{1} << (w - 1))) && t.dominates(w, u))
          narrowed |= std::uint64_t{1} << (w - 1);
      seq.push_back(u);
      grow(seq, narrowed);
      seq.pop_back();
    }
  }
};

}  // namespace

Tournament::Tournament(unsigned players) : n_(players), wins_(std::size_t{players} * players, 0) {
  if (players < 1) throw std::invalid_argument("tournament: need at least one player");
  for (unsigned a = 1; a <= players; ++a)
    for (unsigned b = a + 1; b <= players; ++b) set_dominates(a, b);
}

Tournament Tournament::from_bits(const BitString& e, unsigned players) {
  Tournament t(players);
  if (e.size() != pair_count(players))
    throw std::invalid_argument("tournament: encoding has the wrong length");
  std::size_t k = 0;
  for (unsigned a = 1; a <= players; ++a)
    for (unsigned b = a + 1; b <= players; ++b, ++k) {
      if (e.bit(k))
        t.set_dominates(b, a);
      else
        t.set_dominates(a, b);
    }
  return t;
}

Tournament Tournament::random(unsigned players, std::uint64_t seed) {
  Tournament t(players);
  std::mt19937_64 engine(seed);
  for (unsigned a = 1; a <= players; ++a)
    for (unsigned b = a + 1; b <= players; ++b) {
      if (engine() & 1)
        t.set_dominates(b, a);
      else
        t.set_dominates(a, b);
    }
  return t;
}

bool Tournament::dominates(unsigned a, unsigned b) const {
  check_player(*this, a);
  check_player(*this, b);
  if (a == b) throw std::invalid_argument("tournament: a player cannot meet itself");
  return wins_[std::size_t{a - 1} * n_ + (b - 1)] != 0;
}

void Tournament::set_dominates(unsigned winner, unsigned loser) {
  check_player(*this, winner);
  check_player(*this, loser);
  if (winner == loser) throw std::invalid_argument("tournament: a player cannot meet itself");
  wins_[std::size_t{winner - 1} * n_ + (loser - 1)] = 1;
  wins_[std::size_t{loser - 1} * n_ + (winner - 1)] = 0;
}

BitString Tournament::bits() const {
  BitString e;
  for (unsigned a = 1; a <= n_; ++a)
    for (unsigned b = a + 1; b <= n_; ++b) e.push_back(dominates(b, a));
  return e;
}

bool is_transitive(const Tournament& t, const std::vector<unsigned>& nodes) {
  std::vector<unsigned> scores;
  scores.reserve(nodes.size());
  for (unsigned a : nodes) {
    unsigned wins = 0;
    for (unsigned b : nodes)
      if (a != b && t.dominates(a, b)) ++wins;
    scores.push_back(wins);
  }
  std::sort(scores.begin(), scores.end());
  for (unsigned i = 0; i < scores.size(); ++i)
    if (scores[i] != i) return false;
  return true;
}

std::vector<unsigned> largest_transitive(const Tournament& t) {
  if (t.players() > 32)
    throw std::invalid_argument("largest_transitive: capped at 32 players");
  TransitiveSearch search{t, t.players(), {}, {}};
  std::vector<unsigned> seq;
  search.grow(seq, (std::uint64_t{1} << t.players()) - 1);
  return search.best_seq;
}

std::vector<unsigned> largest_transitive_naive(const Tournament& t) {
  const unsigned n = t.players();
  if (n > 7) throw std::invalid_argument("largest_transitive_naive: capped at 7 players");
  std::vector<unsigned> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<unsigned> nodes;
    for (unsigned p = 1; p <= n; ++p)
      if (mask & (std::uint64_t{1} << (p - 1))) nodes.push_back(p);
    if (!is_transitive(t, nodes)) continue;
    if (nodes.size() > best.size() || (nodes.size() == best.size() && nodes < best))
      best = nodes;
  }
  return best;  // already sorted ascending by construction
}

Compressed compress_with_witness(const Tournament& t,
                                 const std::vector<unsigned>& witness_ascending) {
  const unsigned n = t.players();
  const unsigned v = static_cast<unsigned>(witness_ascending.size());
  if (v < 1 || v > n)
    throw std::invalid_argument("compress_with_witness: witness size out of range");
  std::vector<std::uint8_t> in_witness(n + 1, 0);
  for (unsigned p : witness_ascending) {
    check_player(t, p);
    if (in_witness[p])
      throw std::invalid_argument("compress_with_witness: repeated witness node");
    in_witness[p] = 1;
  }
  for (unsigned i = 0; i < v; ++i)
    for (unsigned j = i + 1; j < v; ++j)
      if (!t.dominates(witness_ascending[j], witness_ascending[i]))
        throw NonTransitive(
            "compress_with_witness: witness is not in dominance-ascending order");

  Compressed out;
  out.players = n;
  out.witness = v;
  const unsigned width = label_width(n);
  for (unsigned p : witness_ascending)
    out.bits.append(BitString::from_value(p - 1, width));
  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = a + 1; b <= n; ++b) {
      if (in_witness[a] && in_witness[b]) continue;
      out.bits.push_back(t.dominates(b, a));
    }
  return out;
}

Tournament reconstruct(const BitString& eprime, unsigned players, unsigned witness) {
  const unsigned n = players;
  const unsigned v = witness;
  if (v < 1 || v > n) throw std::invalid_argument("reconstruct: witness size out of range");
  const unsigned width = label_width(n);
  const std::uint64_t expect =
      std::uint64_t{v} * width + pair_count(n) - pair_count(v);
  if (eprime.size() != expect)
    throw std::invalid_argument("reconstruct: encoding has the wrong length");

  std::vector<unsigned> order;
  std::vector<std::uint8_t> in_witness(n + 1, 0);
  std::vector<unsigned> rank(n + 1, 0);
  std::size_t pos = 0;
  for (unsigned i = 0; i < v; ++i) {
    std::uint64_t value = 0;
    for (unsigned j = 0; j < width; ++j, ++pos) value = (value << 1) | (eprime.bit(pos) ? 1 : 0);
    const unsigned p = static_cast<unsigned>(value) + 1;
    if (p > n || in_witness[p])
      throw std::invalid_argument("reconstruct: bad witness label");
    order.push_back(p);
    in_witness[p] = 1;
    rank[p] = i;
  }

  Tournament t(n);
  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = a + 1; b <= n; ++b) {
      bool b_wins;
      if (in_witness[a] && in_witness[b]) {
        b_wins = rank[b] > rank[a];  // later in the witness dominates earlier
      } else {
        b_wins = eprime.bit(pos);
        ++pos;
      }
      if (b_wins)
        t.set_dominates(b, a);
      else
        t.set_dominates(a, b);
    }
  return t;
}

long long savings(unsigned players, unsigned witness) {
  return static_cast<long long>(pair_count(witness)) -
         static_cast<long long>(witness) * label_width(players);
}

SampleReport sample_and_check(unsigned players, unsigned vmax, std::uint64_t trials,
                              std::uint64_t base_seed, int threads) {
  std::vector<std::uint8_t> ok(trials, 0);
#ifdef _OPENMP
  if (threads != 1) {
    const auto count = static_cast<long long>(trials);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (long long i = 0; i < count; ++i) {
      Tournament t = Tournament::random(players, sources::seed_for(base_seed, i));
      ok[i] = largest_transitive(t).size() <= vmax ? 1 : 0;
    }
  } else
#else
  (void)threads;
#endif
  {
    for (std::uint64_t i = 0; i < trials; ++i) {
      Tournament t = Tournament::random(players, sources::seed_for(base_seed, i));
      ok[i] = largest_transitive(t).size() <= vmax ? 1 : 0;
    }
  }

  SampleReport r;
  r.trials = trials;
  for (auto b : ok) r.within += b;
  r.fraction = trials ? static_cast<double>(r.within) / static_cast<double>(trials) : 0.0;
  const double z = 1.959963984540054;  // 95% two-sided normal quantile
  const double nn = static_cast<double>(trials);
  if (trials > 0) {
    const double p = r.fraction;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    // The score interval provably contains the sample proportion; keep that
    // true under rounding at the p = 0 and p = 1 endpoints.
    r.wilson_low = std::min(std::max(0.0, center - half), p);
    r.wilson_high = std::max(std::min(1.0, center + half), p);
  }
  return r;
}

}  // namespace ait::tourney
