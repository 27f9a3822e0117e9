#include "ait/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace ait {

namespace mp = boost::multiprecision;

Dyadic Dyadic::ratio(BigInt num, unsigned exp) {
  if (num < 0) throw std::invalid_argument("Dyadic: negative numerator");
  Dyadic d;
  d.num_ = std::move(num);
  d.exp_ = exp;
  d.normalize();
  return d;
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned tz = static_cast<unsigned>(mp::lsb(num_));
  if (tz > exp_) tz = exp_;
  num_ >>= tz;
  exp_ -= tz;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  unsigned e = std::max(exp_, o.exp_);
  num_ = (num_ << (e - exp_)) + (o.num_ << (e - o.exp_));
  exp_ = e;
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) {
  unsigned e = std::max(exp_, o.exp_);
  BigInt a = num_ << (e - exp_);
  BigInt b = o.num_ << (e - o.exp_);
  if (a < b) throw std::invalid_argument("Dyadic: subtraction would go negative");
  num_ = a - b;
  exp_ = e;
  normalize();
  return *this;
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic::ratio(a.num_ * b.num_, a.exp_ + b.exp_);
}

int Dyadic::compare(const Dyadic& o) const {
  unsigned e = std::max(exp_, o.exp_);
  BigInt a = num_ << (e - exp_);
  BigInt b = o.num_ << (e - o.exp_);
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

Dyadic Dyadic::truncated(unsigned places) const {
  if (exp_ <= places) return *this;
  return ratio(num_ >> (exp_ - places), places);
}

std::string Dyadic::binary_string(unsigned places) const {
  BigInt shifted = (exp_ <= places) ? BigInt(num_ << (places - exp_))
                                    : BigInt(num_ >> (exp_ - places));
  std::string out(places, '0');
  for (unsigned i = 0; i < places; ++i)
    if (mp::bit_test(shifted, places - 1 - i)) out[i] = '1';
  return out;
}

std::string Dyadic::hex_numerator() const {
  return num_.str(0, std::ios_base::hex);
}

double Dyadic::to_double() const {
  if (num_ == 0) return 0.0;
  return big_ratio_to_double(num_, BigInt(1) << exp_);
}

double big_ratio_to_double(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("big_ratio_to_double: denominator <= 0");
  if (a == 0) return 0.0;
  // Scale so the quotient keeps ~64 significant bits, whatever the magnitudes.
  long msb_a = static_cast<long>(mp::msb(a));
  long msb_b = static_cast<long>(mp::msb(b));
  long shift = 64 - (msb_a - msb_b);
  BigInt q = (shift >= 0) ? BigInt((a << shift) / b) : BigInt(a / (b << -shift));
  return static_cast<double>(q.convert_to<double>()) * std::pow(2.0, -static_cast<double>(shift));
}

unsigned ceil_log2(const BigInt& v) {
  if (v < 1) throw std::invalid_argument("ceil_log2: value < 1");
  unsigned m = static_cast<unsigned>(mp::msb(v));
  BigInt p = BigInt(1) << m;
  return (p == v) ? m : m + 1;
}

double log2_big(const BigInt& v) {
  if (v < 1) throw std::invalid_argument("log2_big: value < 1");
  long top = static_cast<long>(mp::msb(v));
  if (top <= 1000) return std::log2(v.convert_to<double>());
  long shift = top - 64;
  return std::log2(BigInt(v >> shift).convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace ait
