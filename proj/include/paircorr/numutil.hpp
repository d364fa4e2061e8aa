#pragma once

// Exact circle arithmetic on [0,1): P-bit fixed-point points, rationals over a
// power denominator b^k, the circle norm, and distance thresholds s/N^alpha.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"

namespace paircorr {

using u128 = unsigned __int128;

template <class W>
concept PointWord = std::same_as<W, std::uint64_t> || std::same_as<W, u128>;

template <PointWord W>
inline constexpr unsigned word_bits = sizeof(W) * 8;

template <PointWord W>
BigInt to_big(W w) {
  if constexpr (std::same_as<W, std::uint64_t>) {
    return BigInt(w);
  } else {
    BigInt hi = static_cast<std::uint64_t>(w >> 64);
    return (hi << 64) | BigInt(static_cast<std::uint64_t>(w));
  }
}

// Low word_bits<W> bits of v (v >= 0), i.e. v mod 2^P.
template <PointWord W>
W from_big(const BigInt& v) {
  BigInt m = v & ((BigInt(1) << word_bits<W>) - 1);
  if constexpr (std::same_as<W, std::uint64_t>) {
    return static_cast<std::uint64_t>(m);
  } else {
    auto lo = static_cast<std::uint64_t>(m & BigInt(std::numeric_limits<std::uint64_t>::max()));
    auto hi = static_cast<std::uint64_t>(m >> 64);
    return (static_cast<u128>(hi) << 64) | lo;
  }
}

// A point of the circle [0,1) stored as raw / 2^P. Arithmetic wraps mod 1.
template <PointWord W>
struct UnitPoint {
  using word_type = W;
  static constexpr unsigned precision = word_bits<W>;

  W raw = 0;

  friend constexpr UnitPoint operator+(UnitPoint a, UnitPoint b) { return {static_cast<W>(a.raw + b.raw)}; }
  friend constexpr UnitPoint operator-(UnitPoint a, UnitPoint b) { return {static_cast<W>(a.raw - b.raw)}; }
  friend constexpr UnitPoint operator*(W k, UnitPoint a) { return {static_cast<W>(k * a.raw)}; }
  friend constexpr UnitPoint operator*(UnitPoint a, W k) { return {static_cast<W>(k * a.raw)}; }
  friend constexpr bool operator==(UnitPoint, UnitPoint) = default;
  friend constexpr auto operator<=>(UnitPoint a, UnitPoint b) { return a.raw <=> b.raw; }

  double to_double() const { return std::ldexp(static_cast<double>(raw), -static_cast<int>(precision)); }
};

using UnitPoint64 = UnitPoint<std::uint64_t>;
using UnitPoint128 = UnitPoint<u128>;

enum class Exactness { exact, within_1_ulp };

// A circle-norm value in [0, 1/2], same representation as UnitPoint.
template <PointWord W>
struct CircleDistance {
  W raw = 0;
  Exactness exactness = Exactness::exact;

  static constexpr W half = W(1) << (word_bits<W> - 1);

  double to_double() const { return std::ldexp(static_cast<double>(raw), -static_cast<int>(word_bits<W>)); }
  friend constexpr bool operator==(const CircleDistance& a, const CircleDistance& b) { return a.raw == b.raw; }
  friend constexpr auto operator<=>(const CircleDistance& a, const CircleDistance& b) { return a.raw <=> b.raw; }
};

// min(d, 1 - d) with d = (a - b) mod 1.
template <PointWord W>
constexpr CircleDistance<W> circle_dist(UnitPoint<W> a, UnitPoint<W> b) {
  W d = static_cast<W>(a.raw - b.raw);
  W e = static_cast<W>(b.raw - a.raw);
  return {std::min(d, e), Exactness::exact};
}

// numerator / base^exponent, 0 <= numerator < base^exponent <= 2^120.
struct RationalPoint {
  u128 numerator = 0;
  std::uint32_t base = 2;
  std::uint32_t exponent = 0;

  static constexpr unsigned kMaxDenominatorBits = 120;

  u128 denominator() const { return checked_power(base, exponent); }

  // base^exponent, or UsageError above 2^120.
  static u128 checked_power(std::uint32_t base, std::uint32_t exponent) {
    if (base < 2) throw UsageError("rational base must be >= 2");
    const u128 cap = u128(1) << kMaxDenominatorBits;
    u128 r = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) {
      if (r > cap / base) throw UsageError("denominator base^exponent exceeds 2^120");
      r *= base;
    }
    return r;
  }

  // Whether base^exponent stays within the 2^120 cap.
  static bool fits(std::uint32_t base, std::uint32_t exponent) {
    const u128 cap = u128(1) << kMaxDenominatorBits;
    u128 r = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) {
      if (r > cap / base) return false;
      r *= base;
    }
    return true;
  }

  // Same value over base^new_exponent (new_exponent >= exponent).
  RationalPoint rescaled(std::uint32_t new_exponent) const {
    if (new_exponent < exponent) throw UsageError("rescaled: cannot reduce the exponent");
    return {numerator * checked_power(base, new_exponent - exponent), base, new_exponent};
  }

  double to_double() const { return static_cast<double>(numerator) / static_cast<double>(denominator()); }

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

using RationalDistance = RationalPoint;

// Exact circle distance of two points on the same b^k grid.
inline RationalDistance circle_dist_rational(const RationalPoint& a, const RationalPoint& b) {
  if (a.base != b.base || a.exponent != b.exponent) {
    throw UsageError("circle_dist_rational: points are on different b^k grids");
  }
  const u128 den = a.denominator();
  const u128 delta = a.numerator > b.numerator ? a.numerator - b.numerator : b.numerator - a.numerator;
  return {std::min(delta, den - delta), a.base, a.exponent};
}

// Nearest P-bit point to a rational grid value.
template <PointWord W>
UnitPoint<W> to_unit(const RationalPoint& r) {
  BigInt num = to_big<u128>(r.numerator) << word_bits<W>;
  BigInt v = round_div(num, to_big<u128>(r.denominator()));
  return {from_big<W>(v)};
}

// Decimal text of a double as its shortest round-trip form, read back at 50
// digits. A user-typed 0.3 becomes 0.3, not 0.29999999999999998890.
inline HiFloat decimal_of(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return HiFloat(std::string(buf, res.ptr));
}

// s / N^alpha as a high-precision real.
inline HiFloat scaled_window(const HiFloat& s, std::uint64_t n, const HiFloat& alpha) {
  return s / boost::multiprecision::pow(HiFloat(n), alpha);
}

template <PointWord W>
struct Threshold {
  CircleDistance<W> distance;
  W guard = 0;              // ulps either side flagged as ambiguous
  bool degenerate = false;  // s/N^alpha >= 1/2: every pair counts
  HiFloat real = 0;         // the unrounded s/N^alpha
};

inline constexpr unsigned kDefaultGuardBand = 4;

// s/N^alpha rounded to nearest into P-bit fixed point.
template <PointWord W>
Threshold<W> threshold_from(const HiFloat& s, std::uint64_t n, const HiFloat& alpha,
                            unsigned guard = kDefaultGuardBand) {
  if (n < 1) throw UsageError("threshold_from: N must be >= 1");
  if (!(s > 0)) throw UsageError("threshold_from: s must be positive");
  Threshold<W> t;
  t.guard = guard;
  t.real = scaled_window(s, n, alpha);
  if (t.real >= HiFloat(0.5)) {
    t.degenerate = true;
    t.distance = {CircleDistance<W>::half, Exactness::exact};
    return t;
  }
  HiFloat scaled = ldexp(t.real, static_cast<int>(word_bits<W>));
  HiFloat nearest = boost::multiprecision::round(scaled);
  // Degenerate returned above, so the rounded value is at most 2^(P-1).
  t.distance.raw = from_big<W>(nearest.convert_to<BigInt>());
  t.distance.exactness = (scaled == nearest) ? Exactness::exact : Exactness::within_1_ulp;
  return t;
}

template <PointWord W>
Threshold<W> threshold_from(double s, std::uint64_t n, double alpha, unsigned guard = kDefaultGuardBand) {
  return threshold_from<W>(decimal_of(s), n, decimal_of(alpha), guard);
}

// Largest integer k with k/M <= s/N^alpha, for a grid of modulus M. A real
// value within 2^-100 (relative) of an integer is treated as that integer, so
// power-of-base ties like s = 1, alpha = 1/2, N = 4^j stay inclusive.
inline BigInt grid_threshold_numerator(const HiFloat& real, const BigInt& modulus) {
  HiFloat scaled = real * HiFloat(modulus);
  HiFloat nearest = boost::multiprecision::round(scaled);
  HiFloat slack = ldexp(HiFloat(1), -100) * (nearest > 1 ? nearest : HiFloat(1));
  if (boost::multiprecision::abs(scaled - nearest) <= slack) return nearest.convert_to<BigInt>();
  return boost::multiprecision::floor(scaled).convert_to<BigInt>();
}

// value/2^frac_bits as a decimal with at most `digits` significant digits,
// rounded half-even; trailing zeros dropped. value < 2^frac_bits.
inline std::string format_fraction(const BigInt& value, unsigned frac_bits, unsigned digits = 20) {
  if (value == 0) return "0";
  const BigInt denom = pow2(frac_bits);
  if (value >= denom) throw UsageError("format_fraction: value >= 1");
  const BigInt lower = pow_big(10, digits - 1);
  // value ~= q * 10^-e with q holding `digits` digits
  unsigned e = 0;
  BigInt scaled = value;
  while (scaled < lower * denom) {
    scaled *= 10;
    ++e;
  }
  BigInt q = scaled / denom;
  BigInt r = scaled - q * denom;
  if (2 * r > denom || (2 * r == denom && (q & 1) != 0)) ++q;
  if (q == lower * 10) {
    q /= 10;
    --e;
  }
  std::string ds = q.str();
  if (e < ds.size()) return "1";
  std::string out = "0." + std::string(e - ds.size(), '0') + ds;
  while (out.back() == '0') out.pop_back();
  return out;
}

template <PointWord W>
std::string format_unit(UnitPoint<W> p, unsigned digits = 20) {
  return format_fraction(to_big<W>(p.raw), word_bits<W>, digits);
}

// Exact value of a decimal literal like "0.125", "1e-3", "3.5" as num/den.
struct DecimalValue {
  BigInt numerator = 0;
  BigInt denominator = 1;
  unsigned fraction_digits = 0;  // significant digits after the point, for precision checks
};

inline DecimalValue parse_decimal(std::string_view text) {
  DecimalValue out;
  std::size_t i = 0;
  if (i < text.size() && text[i] == '+') ++i;
  if (i < text.size() && text[i] == '-') throw UsageError("negative decimal: " + std::string(text));
  BigInt mant = 0;
  int scale = 0;
  bool any = false, dot = false;
  unsigned frac_digits = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      any = true;
      if (dot) {
        --scale;
        ++frac_digits;
      }
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw UsageError("not a decimal number: " + std::string(text));
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    int exp_value = 0;
    auto res = std::from_chars(text.data() + i, text.data() + text.size(), exp_value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw UsageError("bad exponent in: " + std::string(text));
    }
    scale += exp_value;
    frac_digits = static_cast<unsigned>(std::max(0, static_cast<int>(frac_digits) - exp_value));
    i = text.size();
  }
  if (i != text.size()) throw UsageError("trailing characters in number: " + std::string(text));
  if (scale >= 0) {
    out.numerator = mant * pow_big(10, static_cast<unsigned>(scale));
  } else {
    out.numerator = mant;
    out.denominator = pow_big(10, static_cast<unsigned>(-scale));
  }
  out.fraction_digits = frac_digits;
  return out;
}

// Nearest P-bit point to a decimal in [0,1); a value rounding to 1 wraps to 0.
template <PointWord W>
UnitPoint<W> parse_unit(std::string_view text) {
  DecimalValue d = parse_decimal(text);
  if (d.numerator >= d.denominator) throw UsageError("point outside [0,1): " + std::string(text));
  return {from_big<W>(round_div(d.numerator << word_bits<W>, d.denominator))};
}

}  // namespace paircorr
