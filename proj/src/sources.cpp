#include "ait/sources.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ait::sources {

namespace {

class ConstantSource final : public BitSource {
 public:
  explicit ConstantSource(bool bit) : bit_(bit) {}
  bool next() override {
    ++pos_;
    return bit_;
  }
  std::unique_ptr<BitSource> clone() const override {
    return std::make_unique<ConstantSource>(*this);
  }
  std::uint64_t position() const override { return pos_; }
  void seek(std::uint64_t pos) override { pos_ = pos; }
  std::string describe() const override {
    return bit_ ? "constant(1)" : "constant(0)";
  }

 private:
  bool bit_;
  std::uint64_t pos_ = 0;
};

class PeriodicSource final : public BitSource {
 public:
  explicit PeriodicSource(BitString pattern) : pattern_(std::move(pattern)) {
    if (pattern_.size() == 0)
      throw std::invalid_argument("periodic_source: empty pattern");
  }
  bool next() override { return pattern_.bit(pos_++ % pattern_.size()); }
  std::unique_ptr<BitSource> clone() const override {
    return std::make_unique<PeriodicSource>(*this);
  }
  std::uint64_t position() const override { return pos_; }
  void seek(std::uint64_t pos) override { pos_ = pos; }
  std::string describe() const override { return "periodic(" + pattern_.str() + ")"; }

 private:
  BitString pattern_;
  std::uint64_t pos_ = 0;
};

class PrngSource final : public BitSource {
 public:
  explicit PrngSource(std::uint64_t seed) : seed_(seed) { seek(0); }
  bool next() override {
    const std::uint64_t word_index = pos_ >> 6;
    if (word_index != word_index_) {
      if (word_index == word_index_ + 1) {
        word_ = engine_();
        ++word_index_;
      } else {
        seek(pos_);
      }
    }
    const unsigned offset = static_cast<unsigned>(pos_ & 63);
    ++pos_;
    return (word_ >> (63 - offset)) & 1;
  }
  std::unique_ptr<BitSource> clone() const override {
    return std::make_unique<PrngSource>(*this);
  }
  std::uint64_t position() const override { return pos_; }
  void seek(std::uint64_t pos) override {
    engine_.seed(seed_);
    engine_.discard(pos >> 6);
    word_ = engine_();
    word_index_ = pos >> 6;
    pos_ = pos;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "prng(" << kPrngVersion << ", seed=" << seed_ << ")";
    return os.str();
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  std::uint64_t word_index_ = 0;
  std::uint64_t pos_ = 0;
};

// Digit block arithmetic: integers with exactly d digits in base b number
// (b-1)*b^(d-1) and contribute d digits each.
struct DigitLocation {
  std::uint64_t number;
  unsigned digit;  // 0 is the most significant
  unsigned width;
};

DigitLocation locate_digit(unsigned base, std::uint64_t index) {
  if (base < 2 || base > 10) throw std::invalid_argument("champernowne: base must be 2..10");
  const auto b = static_cast<std::uint64_t>(base);
  std::uint64_t first = 1;  // least d-digit number, b^(d-1)
  unsigned d = 1;
  std::uint64_t remaining = index;
  for (;;) {
    // Guard the multiply; at overflow scale the block is unreachable anyway.
    const std::uint64_t numbers = (b - 1) * first;
    const std::uint64_t block = numbers > (std::uint64_t{1} << 56) ? std::uint64_t(-1) / d
                                                                   : numbers * d;
    if (remaining < block) break;
    remaining -= block;
    first *= b;
    ++d;
    if (d > 62) throw std::invalid_argument("champernowne: index out of range");
  }
  return {first + remaining / d, static_cast<unsigned>(remaining % d), d};
}

char digit_char(std::uint64_t number, unsigned digit, unsigned width, unsigned base) {
  std::uint64_t divisor = 1;
  for (unsigned i = digit + 1; i < width; ++i) divisor *= base;
  return static_cast<char>('0' + (number / divisor) % base);
}

class ChampernowneSource final : public BitSource {
 public:
  bool next() override { return champernowne_digit_at(2, pos_++) == '1'; }
  std::unique_ptr<BitSource> clone() const override {
    return std::make_unique<ChampernowneSource>(*this);
  }
  std::uint64_t position() const override { return pos_; }
  void seek(std::uint64_t pos) override { pos_ = pos; }
  std::string describe() const override { return "champernowne(base=2)"; }

 private:
  std::uint64_t pos_ = 0;
};

class BufferSource final : public BitSource {
 public:
  BufferSource(BitString bits, bool padded) : bits_(std::move(bits)), padded_(padded) {}
  bool next() override {
    if (pos_ >= bits_.size()) {
      if (!padded_) throw std::out_of_range("buffer source exhausted");
      ++pos_;
      return false;
    }
    return bits_.bit(pos_++);
  }
  std::unique_ptr<BitSource> clone() const override {
    return std::make_unique<BufferSource>(*this);
  }
  std::uint64_t position() const override { return pos_; }
  void seek(std::uint64_t pos) override { pos_ = pos; }
  std::string describe() const override {
    std::ostringstream os;
    os << (padded_ ? "padded_buffer" : "buffer") << "(n=" << bits_.size() << ")";
    return os.str();
  }

 private:
  BitString bits_;
  bool padded_;
  std::uint64_t pos_ = 0;
};

}  // namespace

std::unique_ptr<BitSource> constant_source(bool bit) {
  return std::make_unique<ConstantSource>(bit);
}

std::unique_ptr<BitSource> periodic_source(const BitString& pattern) {
  return std::make_unique<PeriodicSource>(pattern);
}

std::unique_ptr<BitSource> prng_stream(std::uint64_t seed) {
  return std::make_unique<PrngSource>(seed);
}

char champernowne_digit_at(unsigned base, std::uint64_t index) {
  const DigitLocation loc = locate_digit(base, index);
  return digit_char(loc.number, loc.digit, loc.width, base);
}

std::string champernowne_digits(unsigned base, std::uint64_t count) {
  std::string out;
  out.reserve(count);
  std::uint64_t number = 1;
  unsigned width = 1;
  std::uint64_t next_width_at = base;
  std::string rendered;
  while (out.size() < count) {
    if (number == next_width_at) {
      ++width;
      next_width_at *= base;
    }
    rendered.clear();
    std::uint64_t v = number;
    for (unsigned i = 0; i < width; ++i) {
      rendered.push_back(static_cast<char>('0' + v % base));
      v /= base;
    }
    for (unsigned i = width; i-- > 0 && out.size() < count;)
      out.push_back(rendered[i]);
    ++number;
  }
  return out;
}

std::unique_ptr<BitSource> champernowne_source() {
  return std::make_unique<ChampernowneSource>();
}

std::unique_ptr<BitSource> buffer_source(BitString bits) {
  return std::make_unique<BufferSource>(std::move(bits), false);
}

std::unique_ptr<BitSource> padded_buffer_source(BitString bits) {
  return std::make_unique<BufferSource>(std::move(bits), true);
}

RandomAccessBits::RandomAccessBits(std::unique_ptr<BitSource> source)
    : source_(std::move(source)) {
  source_->seek(0);
}

void RandomAccessBits::materialize(std::uint64_t n) {
  while (cache_.size() < n) cache_.push_back(source_->next());
}

bool RandomAccessBits::bit(std::uint64_t i) {
  materialize(i + 1);
  return cache_.bit(i);
}

BitString RandomAccessBits::prefix(std::uint64_t n) {
  materialize(n);
  return cache_.prefix(n);
}

BitString read_bits_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open bits file: " + path);
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  static const std::string magic = "AITBITS1";
  if (raw.size() >= magic.size() && raw.compare(0, magic.size(), magic) == 0) {
    if (raw.size() < magic.size() + 8)
      throw std::invalid_argument("packed bits file truncated: " + path);
    std::uint64_t count = 0;
    for (unsigned i = 0; i < 8; ++i)
      count |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[magic.size() + i]))
               << (8 * i);
    const std::uint64_t need = (count + 7) / 8;
    if (raw.size() != magic.size() + 8 + need)
      throw std::invalid_argument("packed bits file has wrong payload size: " + path);
    BitString bits;
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto byte = static_cast<unsigned char>(raw[magic.size() + 8 + (i >> 3)]);
      bits.push_back((byte >> (7 - (i & 7))) & 1);
    }
    return bits;
  }
  BitString bits;
  for (char c : raw) {
    if (c == '0' || c == '1')
      bits.push_back(c == '1');
    else if (c != ' ' && c != '\n' && c != '\r' && c != '\t')
      throw std::invalid_argument(std::string("unexpected character in bits file: '") + c + "'");
  }
  return bits;
}

void write_bits_ascii(const std::string& path, const BitString& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write bits file: " + path);
  out << bits.str() << '\n';
}

void write_bits_packed(const std::string& path, const BitString& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write bits file: " + path);
  out << "AITBITS1";
  const std::uint64_t count = bits.size();
  for (unsigned i = 0; i < 8; ++i)
    out.put(static_cast<char>((count >> (8 * i)) & 0xff));
  std::vector<unsigned char> bytes((count + 7) / 8, 0);
  for (std::uint64_t i = 0; i < count; ++i)
    if (bits.bit(i)) bytes[i >> 3] |= static_cast<unsigned char>(1u << (7 - (i & 7)));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::uint64_t seed_for(std::uint64_t base, std::uint64_t trial) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ait::sources
