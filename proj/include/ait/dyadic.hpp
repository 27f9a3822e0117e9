#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ait {

using BigInt = boost::multiprecision::cpp_int;

// Nonnegative dyadic rational num / 2^exp, normalized so num is odd or zero.
// Exact: used wherever a probability mass or halting-weight must not drift.
class Dyadic {
 public:
  Dyadic() = default;

  static Dyadic zero() { return {}; }
  static Dyadic one() { return ratio(1, 0); }
  static Dyadic pow2_neg(unsigned k) { return ratio(1, k); }  // 2^-k
  static Dyadic ratio(BigInt num, unsigned exp);

  bool is_zero() const { return num_ == 0; }
  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  Dyadic& operator+=(const Dyadic& o);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  Dyadic& operator-=(const Dyadic& o);  // throws if the result would be negative
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

  int compare(const Dyadic& o) const;  // -1, 0, 1
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return a.compare(b) != 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return a.compare(b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a.compare(b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return a.compare(b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return a.compare(b) >= 0; }

  // floor(value * 2^places) / 2^places: the value of the first `places`
  // binary places, lower bits dropped.
  Dyadic truncated(unsigned places) const;

  // First `places` binary places after the point, as '0'/'1' characters.
  std::string binary_string(unsigned places) const;

  std::string hex_numerator() const;
  double to_double() const;

 private:
  BigInt num_;        // >= 0
  unsigned exp_ = 0;  // denominator 2^exp
  void normalize();
};

// a/b as a double without overflowing the conversion for huge a, b (b > 0).
double big_ratio_to_double(const BigInt& a, const BigInt& b);

// log2(v) for v >= 1, accurate to double precision for any width.
double log2_big(const BigInt& v);

// ceil(log2(v)) for v >= 1.
unsigned ceil_log2(const BigInt& v);

}  // namespace ait
