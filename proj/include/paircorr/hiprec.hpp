#pragma once

// High-precision scratch arithmetic: arbitrary-size integers, a signed
// 192-bit fixed-point real, and a 50-digit binary float for thresholds.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

#include "paircorr/errors.hpp"

namespace paircorr {

using BigInt = boost::multiprecision::cpp_int;
using HiFloat = boost::multiprecision::cpp_bin_float_50;

inline BigInt pow_big(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline BigInt pow2(unsigned bits) {
  BigInt one = 1;
  return one << bits;
}

// Floor division for signed big integers (cpp_int divides toward zero).
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  BigInt r = num - q * den;
  if (r != 0 && ((r < 0) != (den < 0))) --q;
  return q;
}

// Round num/den to the nearest integer, ties away from zero. den > 0.
inline BigInt round_div(const BigInt& num, const BigInt& den) {
  BigInt twice = 2 * num + (num < 0 ? -den : den);
  return twice / (2 * den);
}

// Signed fixed-point value raw / 2^192.
class Fixed192 {
 public:
  static constexpr unsigned kFracBits = 192;

  Fixed192() = default;

  static Fixed192 from_raw(BigInt raw) {
    Fixed192 f;
    f.raw_ = std::move(raw);
    return f;
  }
  static Fixed192 from_int(const BigInt& v) { return from_raw(v << kFracBits); }
  // Nearest fixed-point value to num/den.
  static Fixed192 from_ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("Fixed192::from_ratio: zero denominator");
    BigInt n = num, d = den;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return from_raw(round_div(n << kFracBits, d));
  }

  const BigInt& raw() const { return raw_; }

  Fixed192 operator-() const { return from_raw(-raw_); }
  friend Fixed192 operator+(const Fixed192& a, const Fixed192& b) { return from_raw(a.raw_ + b.raw_); }
  friend Fixed192 operator-(const Fixed192& a, const Fixed192& b) { return from_raw(a.raw_ - b.raw_); }
  friend Fixed192 operator*(const Fixed192& a, const Fixed192& b) {
    return from_raw(round_div(a.raw_ * b.raw_, pow2(kFracBits)));
  }
  friend Fixed192 operator*(const Fixed192& a, const BigInt& k) { return from_raw(a.raw_ * k); }
  friend Fixed192 operator*(const BigInt& k, const Fixed192& a) { return from_raw(a.raw_ * k); }
  friend Fixed192 operator/(const Fixed192& a, const Fixed192& b) {
    if (b.raw_ == 0) throw DomainError("Fixed192: division by zero");
    BigInt num = a.raw_ << kFracBits;
    BigInt den = b.raw_;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return from_raw(round_div(num, den));
  }
  friend Fixed192 operator/(const Fixed192& a, const BigInt& k) {
    if (k == 0) throw DomainError("Fixed192: division by zero");
    BigInt num = a.raw_, den = k;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return from_raw(round_div(num, den));
  }

  friend bool operator==(const Fixed192&, const Fixed192&) = default;
  friend std::strong_ordering operator<=>(const Fixed192& a, const Fixed192& b) {
    if (a.raw_ < b.raw_) return std::strong_ordering::less;
    if (a.raw_ > b.raw_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Fixed192 abs() const { return from_raw(raw_ < 0 ? BigInt(-raw_) : raw_); }
  BigInt floor() const { return floor_div(raw_, pow2(kFracBits)); }
  Fixed192 frac() const { return *this - from_int(floor()); }

  // Nearest integer multiple of 2^-bits, returned as that integer.
  BigInt round_to_bits(unsigned bits) const {
    if (bits >= kFracBits) return raw_ << (bits - kFracBits);
    return round_div(raw_, pow2(kFracBits - bits));
  }

  double to_double() const { return static_cast<double>(to_hifloat()); }
  HiFloat to_hifloat() const { return ldexp(HiFloat(raw_), -static_cast<int>(kFracBits)); }

 private:
  BigInt raw_ = 0;
};

// floor(sqrt(n)) by integer Newton iteration.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  if (n < 2) return n;
  BigInt x = pow2(static_cast<unsigned>(boost::multiprecision::msb(n) / 2 + 1));
  while (true) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = y;
  }
}

// phi * 2^192, floored. Integer Newton iteration on X^2 = X*S + S^2 (X = phi*S).
inline const Fixed192& golden_ratio() {
  static const Fixed192 phi = [] {
    const BigInt scale = pow2(Fixed192::kFracBits);
    BigInt x = 2 * scale;  // above the root, so the iteration decreases monotonically
    while (true) {
      BigInt y = (x * x + scale * scale) / (2 * x - scale);
      if (y >= x) break;
      x = y;
    }
    auto f = [&](const BigInt& v) { return BigInt(v * v - v * scale - scale * scale); };
    while (f(x) > 0) --x;
    while (f(x + 1) <= 0) ++x;
    return Fixed192::from_raw(x);
  }();
  return phi;
}

// Fractional part of phi, i.e. phi - 1.
inline Fixed192 golden_fraction() { return golden_ratio() - Fixed192::from_int(1); }

}  // namespace paircorr
