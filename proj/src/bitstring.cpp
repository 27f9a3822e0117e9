#include "ait/bitstring.hpp"

#include <bit>

namespace ait {

namespace {
constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;
}  // namespace

BitString::BitString(std::string_view ascii) {
  w_.reserve((ascii.size() + 63) / 64);
  for (char c : ascii) {
    if (c == '0') {
      push_back(false);
    } else if (c == '1') {
      push_back(true);
    } else {
      throw std::invalid_argument("BitString: expected only '0'/'1', got '" +
                                  std::string(1, c) + "'");
    }
  }
}

BitString BitString::zeros(std::size_t n) {
  BitString r;
  r.n_ = n;
  r.w_.assign((n + 63) / 64, 0);
  return r;
}

BitString BitString::ones(std::size_t n) {
  BitString r;
  r.n_ = n;
  r.w_.assign((n + 63) / 64, ~0ull);
  if (n & 63) r.w_.back() &= (1ull << (n & 63)) - 1;
  return r;
}

BitString BitString::from_value(std::uint64_t value, unsigned width) {
  if (width > 64) throw std::invalid_argument("BitString::from_value: width > 64");
  BitString r;
  for (unsigned i = 0; i < width; ++i)
    r.push_back((value >> (width - 1 - i)) & 1u);
  return r;
}

void BitString::push_back(bool b) {
  if ((n_ & 63) == 0) w_.push_back(0);
  if (b) w_.back() |= 1ull << (n_ & 63);
  ++n_;
}

void BitString::pop_back() {
  if (n_ == 0) throw std::invalid_argument("BitString::pop_back on empty string");
  --n_;
  w_[n_ >> 6] &= ~(1ull << (n_ & 63));
  if ((n_ & 63) == 0) w_.pop_back();
}

void BitString::append(const BitString& other) {
  for (std::size_t i = 0; i < other.n_; ++i) push_back(other.bit(i));
}

void BitString::truncate(std::size_t n) {
  if (n > n_) throw std::invalid_argument("BitString::truncate beyond size");
  n_ = n;
  w_.resize((n + 63) / 64);
  if (n & 63) w_.back() &= (1ull << (n & 63)) - 1;
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
  if (pos + len > n_) throw std::invalid_argument("BitString::substr out of range");
  BitString r;
  for (std::size_t i = 0; i < len; ++i) r.push_back(bit(pos + i));
  return r;
}

bool BitString::is_prefix_of(const BitString& other) const {
  if (n_ > other.n_) return false;
  std::size_t full = n_ >> 6;
  for (std::size_t i = 0; i < full; ++i)
    if (w_[i] != other.w_[i]) return false;
  if (n_ & 63) {
    std::uint64_t mask = (1ull << (n_ & 63)) - 1;
    if ((w_[full] & mask) != (other.w_[full] & mask)) return false;
  }
  return true;
}

std::uint64_t BitString::count_ones() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : w_) c += std::popcount(w);
  return c;
}

std::string BitString::str() const {
  std::string s;
  s.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) s.push_back(bit(i) ? '1' : '0');
  return s;
}

std::uint64_t BitString::hash() const {
  std::uint64_t h = kFnvOffset;
  h = (h ^ n_) * kFnvPrime;
  for (std::uint64_t w : w_) {
    for (int b = 0; b < 8; ++b) {
      h = (h ^ ((w >> (8 * b)) & 0xff)) * kFnvPrime;
    }
  }
  return h;
}

bool canonical_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.bit(i) != b.bit(i)) return b.bit(i);
  }
  return false;
}

std::uint64_t to_index(const BitString& x) {
  if (x.size() > 62) throw std::invalid_argument("to_index: string longer than 62 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) v = (v << 1) | (x.bit(i) ? 1u : 0u);
  return ((1ull << x.size()) - 1) + v;
}

BitString from_index(std::uint64_t i) {
  // Length L satisfies 2^L - 1 <= i < 2^{L+1} - 1.
  unsigned len = std::bit_width(i + 1) - 1;
  std::uint64_t v = (i + 1) - (1ull << len);
  return BitString::from_value(v, len);
}

BitString encode_sd1(const BitString& x) {
  BitString r = BitString::ones(x.size());
  r.push_back(false);
  r.append(x);
  return r;
}

BitString encode_sd2(const BitString& x) {
  BitString r = encode_sd1(from_index(x.size()));
  r.append(x);
  return r;
}

Decoded decode_sd1(const BitString& s, std::size_t pos) {
  std::size_t ones = 0;
  while (pos + ones < s.size() && s.bit(pos + ones)) ++ones;
  if (pos + ones >= s.size())
    throw MalformedPrefix("decode_sd1: ran out of bits in the unary length field");
  std::size_t body = pos + ones + 1;
  if (body + ones > s.size())
    throw MalformedPrefix("decode_sd1: payload shorter than announced");
  return {s.substr(body, ones), ones + 1 + ones};
}

Decoded decode_sd2(const BitString& s, std::size_t pos) {
  Decoded r = decode_sd1(s, pos);
  std::uint64_t n = to_index(r.value);
  std::size_t body = pos + r.consumed;
  if (body + n > s.size())
    throw MalformedPrefix("decode_sd2: payload shorter than announced");
  return {s.substr(body, n), r.consumed + n};
}

BitString encode_pair(const BitString& x, const BitString& y) {
  BitString r = encode_sd2(x);
  r.append(y);
  return r;
}

PairParts decode_pair(const BitString& s) {
  Decoded d = decode_sd2(s, 0);
  return {d.value, s.substr(d.consumed, s.size() - d.consumed)};
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : data) h = (h ^ c) * kFnvPrime;
  return h;
}

}  // namespace ait
