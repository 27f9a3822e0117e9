#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ait {

// Raised when a self-delimiting decode runs out of bits or sees junk.
class MalformedPrefix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite binary string. Bit 0 is the leftmost bit. Packed 64 bits per word,
// word 0 holds bits 0..63 with bit i at position (i % 64) from the low end.
class BitString {
 public:
  BitString() = default;
  // Parses "0101"; anything but '0'/'1' throws.
  explicit BitString(std::string_view ascii);

  static BitString zeros(std::size_t n);
  static BitString ones(std::size_t n);
  // Width low bits of value, emitted most significant first.
  static BitString from_value(std::uint64_t value, unsigned width);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool bit(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool b) {
    if (b)
      w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    else
      w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void push_back(bool b);
  void pop_back();
  void append(const BitString& other);
  void truncate(std::size_t n);  // keep the first n bits
  BitString substr(std::size_t pos, std::size_t len) const;
  BitString prefix(std::size_t n) const { return substr(0, n); }

  bool is_prefix_of(const BitString& other) const;
  std::uint64_t count_ones() const;
  std::string str() const;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }

  std::uint64_t hash() const;

 private:
  std::vector<std::uint64_t> w_;
  std::size_t n_ = 0;
};

struct BitStringHash {
  std::size_t operator()(const BitString& x) const {
    return static_cast<std::size_t>(x.hash());
  }
};

// (length, then lexicographic) order; identical to the numbering order below.
bool canonical_less(const BitString& a, const BitString& b);

// The standard numbering of strings:
//   0 <-> "", 1 <-> "0", 2 <-> "1", 3 <-> "00", 4 <-> "01", ...
// to_index needs size() <= 62 so the result fits in 64 bits.
std::uint64_t to_index(const BitString& x);
BitString from_index(std::uint64_t i);

// Self-delimiting codes.
//   sd1(x) = 1^l(x) 0 x                       length 2 l(x) + 1
//   sd2(x) = 1^l(r) 0 r x, r = from_index(l(x)), length l(x) + 2 l(r) + 1
// Note l(x) = 0 gives r = "", so sd2("") = "0".
BitString encode_sd1(const BitString& x);
BitString encode_sd2(const BitString& x);

struct Decoded {
  BitString value;
  std::size_t consumed;
};
Decoded decode_sd1(const BitString& s, std::size_t pos = 0);
Decoded decode_sd2(const BitString& s, std::size_t pos = 0);

// Pairing <x,y> = sd2(x) y. decode_pair returns x and whatever follows.
BitString encode_pair(const BitString& x, const BitString& y);
struct PairParts {
  BitString first;
  BitString rest;
};
PairParts decode_pair(const BitString& s);

std::uint64_t fnv1a(std::string_view data);

}  // namespace ait
