#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ait/bitstring.hpp"

namespace ait::sources {

// An infinite (or exhaustible) stream of bits with an exact cursor. seek is
// required to land on precisely the bit a fresh stream would reach by calling
// next() that many times, whatever the backing generator.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual bool next() = 0;
  virtual std::unique_ptr<BitSource> clone() const = 0;
  virtual std::uint64_t position() const = 0;
  virtual void seek(std::uint64_t pos) = 0;
  virtual std::string describe() const = 0;
};

std::unique_ptr<BitSource> constant_source(bool bit);
std::unique_ptr<BitSource> periodic_source(const BitString& pattern);  // nonempty

// mt19937_64 drawn 64 bits at a time, each word unpacked most significant bit
// first. The version tag is embedded in reports so recorded runs stay
// reproducible if the unpacking ever changes.
inline constexpr const char* kPrngVersion = "mt19937_64/msb.v1";
std::unique_ptr<BitSource> prng_stream(std::uint64_t seed);

// Digits of the base-b Champernowne expansion 0.(1)(2)(3)... with each
// integer written in base b, indexable without generating predecessors.
std::string champernowne_digits(unsigned base, std::uint64_t count);
char champernowne_digit_at(unsigned base, std::uint64_t index);
std::unique_ptr<BitSource> champernowne_source();  // base 2, bits

// A finite buffer: next() past the end throws std::out_of_range. The padded
// variant continues with zeros forever, the tail convention for dyadic
// rationals written as infinite expansions.
std::unique_ptr<BitSource> buffer_source(BitString bits);
std::unique_ptr<BitSource> padded_buffer_source(BitString bits);

// Lazy random access over any source: bits are materialized once, in order.
class RandomAccessBits {
 public:
  explicit RandomAccessBits(std::unique_ptr<BitSource> source);
  bool bit(std::uint64_t i);
  BitString prefix(std::uint64_t n);
  std::string describe() const { return source_->describe(); }

 private:
  void materialize(std::uint64_t n);
  std::unique_ptr<BitSource> source_;
  BitString cache_;
};

// Bit files. ASCII is '0'/'1' with whitespace ignored; the packed format is
// the magic "AITBITS1", a little-endian u64 bit count, then the bits packed
// most significant first into bytes.
BitString read_bits_file(const std::string& path);
void write_bits_ascii(const std::string& path, const BitString& bits);
void write_bits_packed(const std::string& path, const BitString& bits);

// Per-trial seeds: decorrelates trial i from a base seed with a splitmix64
// jump and mix, so parallel and serial trial loops agree bit for bit.
std::uint64_t seed_for(std::uint64_t base, std::uint64_t trial);

}  // namespace ait::sources
