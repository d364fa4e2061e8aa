#pragma once

// Point families on the circle: van der Corput (exact rationals), Kronecker
// rotations {nz}, {sqrt(n)} and seeded i.i.d. uniform points.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"
#include "paircorr/numutil.hpp"

namespace paircorr {

// Rotation number z for a Kronecker sequence.
//   golden         the fractional part of phi
//   decimal        a literal such as 0.4142135623730950488016887242097; a
//                  non-dyadic literal must carry at least P+8 bits of digits
//   rational       "p/q", an exact-intent rotation
//   quotients      "cf:a1,a2,...", z = [0; a1, a2, ...] evaluated exactly
struct ZSpec {
  enum class Kind { golden, decimal, rational, quotients };

  Kind kind = Kind::golden;
  std::string text = "golden";
  BigInt numerator = 0;  // exact value for decimal / rational / quotients
  BigInt denominator = 1;
  unsigned decimal_digits = 0;
  std::vector<BigInt> partial_quotients;

  static ZSpec golden() { return {}; }

  static ZSpec rational(const BigInt& p, const BigInt& q) {
    if (q <= 0 || p < 0) throw UsageError("z = p/q needs p >= 0, q > 0");
    ZSpec z;
    z.kind = Kind::rational;
    z.numerator = p;
    z.denominator = q;
    z.text = p.str() + "/" + q.str();
    return z;
  }

  static ZSpec from_quotients(std::vector<BigInt> quotients) {
    if (quotients.empty()) throw UsageError("cf z_spec needs at least one partial quotient");
    ZSpec z;
    z.kind = Kind::quotients;
    // [0; a1, ..., ak] evaluated from the tail
    BigInt num = 0, den = 1;
    for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
      if (*it < 1) throw UsageError("partial quotients must be >= 1");
      // 1 / (a + num/den) = den / (a*den + num)
      BigInt next_den = *it * den + num;
      num = den;
      den = next_den;
    }
    z.numerator = num;
    z.denominator = den;
    z.partial_quotients = std::move(quotients);
    z.text = "cf:";
    for (std::size_t i = 0; i < z.partial_quotients.size(); ++i) {
      if (i) z.text += ',';
      z.text += z.partial_quotients[i].str();
    }
    return z;
  }

  static ZSpec parse(std::string_view text) {
    if (text == "golden" || text == "phi") return golden();
    if (text.starts_with("cf:")) {
      std::vector<BigInt> qs;
      std::string_view rest = text.substr(3);
      while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        DecimalValue d = parse_decimal(item);
        if (d.denominator != 1) throw UsageError("partial quotients must be integers: " + std::string(text));
        qs.push_back(d.numerator);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      return from_quotients(std::move(qs));
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      DecimalValue p = parse_decimal(text.substr(0, slash));
      DecimalValue q = parse_decimal(text.substr(slash + 1));
      if (p.denominator != 1 || q.denominator != 1) throw UsageError("p/q needs integers: " + std::string(text));
      return rational(p.numerator, q.numerator);
    }
    DecimalValue d = parse_decimal(text);
    ZSpec z;
    z.kind = Kind::decimal;
    z.numerator = d.numerator;
    z.denominator = d.denominator;
    z.decimal_digits = d.fraction_digits;
    z.text = std::string(text);
    return z;
  }

  // {z} to 192 bits (exact values are rounded once).
  Fixed192 fraction() const {
    if (kind == Kind::golden) return golden_fraction();
    return Fixed192::from_ratio(numerator % denominator, denominator);
  }
};

// The P-bit rotation word Z = round({z} * 2^P).
template <PointWord W>
W rotation_word(const ZSpec& z) {
  constexpr unsigned bits = word_bits<W>;
  if (z.kind == ZSpec::Kind::golden) return from_big<W>(golden_fraction().round_to_bits(bits));
  BigInt frac_num = z.numerator % z.denominator;
  BigInt scaled = frac_num << bits;
  if (z.kind == ZSpec::Kind::decimal && scaled % z.denominator != 0) {
    // bits carried by the literal: floor(digits * log2(10))
    const unsigned carried = static_cast<unsigned>(z.decimal_digits * 3.321928094887362);
    if (carried < bits + 8) {
      throw UsageError("z literal '" + z.text + "' carries " + std::to_string(carried) + " bits; precision " +
                       std::to_string(bits) + " needs at least " + std::to_string(bits + 8));
    }
  }
  return from_big<W>(round_div(scaled, z.denominator));
}

// Radical inverse of n in base b as an exact rational over b^k, k = number of
// base-b digits of n (k = 0 for n = 0).
inline RationalPoint vdc(std::uint64_t n, std::uint32_t base) {
  if (base < 2) throw UsageError("van der Corput base must be >= 2");
  RationalPoint r{0, base, 0};
  while (n > 0) {
    r.numerator = r.numerator * base + n % base;
    n /= base;
    ++r.exponent;
  }
  return r;
}

// Number of base-b digits of n (0 for n = 0).
inline std::uint32_t digit_count(std::uint64_t n, std::uint32_t base) {
  std::uint32_t k = 0;
  while (n > 0) {
    n /= base;
    ++k;
  }
  return k;
}

template <PointWord W>
UnitPoint<W> kronecker(std::uint64_t n, const ZSpec& z) {
  return UnitPoint<W>{static_cast<W>(static_cast<W>(n) * rotation_word<W>(z))};
}

// {sqrt(n)} truncated to P bits; perfect squares give exactly 0.
template <PointWord W>
UnitPoint<W> sqrt_frac(std::uint64_t n) {
  if (n < 1) throw UsageError("sqrt_frac needs n >= 1");
  BigInt root = isqrt(BigInt(n) << (2 * word_bits<W>));
  return {from_big<W>(root)};
}

// Uniform over the 2^P grid from mt19937_64; a 128-bit point takes the high
// word from the first draw.
template <PointWord W>
std::vector<UnitPoint<W>> iid_uniform(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<UnitPoint<W>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if constexpr (std::same_as<W, std::uint64_t>) {
      out.push_back({rng()});
    } else {
      u128 hi = rng();
      u128 lo = rng();
      out.push_back({(hi << 64) | lo});
    }
  }
  return out;
}

enum class SequenceKind { vdc, kronecker, sqrt_frac, iid };

inline std::string to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::vdc: return "vdc";
    case SequenceKind::kronecker: return "kronecker";
    case SequenceKind::sqrt_frac: return "sqrt_frac";
    case SequenceKind::iid: return "iid";
  }
  return "?";
}

inline SequenceKind parse_sequence_kind(std::string_view s) {
  if (s == "vdc") return SequenceKind::vdc;
  if (s == "kronecker") return SequenceKind::kronecker;
  if (s == "sqrt_frac" || s == "sqrt") return SequenceKind::sqrt_frac;
  if (s == "iid") return SequenceKind::iid;
  throw UsageError("unknown sequence kind: " + std::string(s));
}

struct SequenceSpec {
  SequenceKind kind = SequenceKind::kronecker;
  std::uint32_t base = 2;     // vdc
  bool include_zero = true;   // vdc: x_0 = 0 precedes g_b(1), g_b(2), ...
  ZSpec z = ZSpec::golden();  // kronecker
  std::uint64_t seed = 0;     // iid

  // "vdc b=2", "kronecker z=golden", ...
  std::string params() const {
    switch (kind) {
      case SequenceKind::vdc: return "b=" + std::to_string(base) + (include_zero ? "" : " no_zero");
      case SequenceKind::kronecker: return "z=" + z.text;
      case SequenceKind::sqrt_frac: return "";
      case SequenceKind::iid: return "seed=" + std::to_string(seed);
    }
    return "";
  }
};

// Points as numerators over one common b^k.
struct RationalBatch {
  std::vector<u128> numerators;
  std::uint32_t base = 2;
  std::uint32_t exponent = 0;

  std::size_t size() const { return numerators.size(); }
  u128 modulus() const { return RationalPoint::checked_power(base, exponent); }
  RationalPoint at(std::size_t i) const { return {numerators[i], base, exponent}; }
};

template <PointWord W>
using UnitBatch = std::vector<UnitPoint<W>>;

template <PointWord W>
struct PointBatch {
  std::variant<RationalBatch, UnitBatch<W>> points;
  bool exact_fallback = false;  // vdc wanted exact mode but b^k passed 2^120

  bool is_exact() const { return std::holds_alternative<RationalBatch>(points); }
  std::size_t size() const {
    return std::visit([](const auto& p) { return p.size(); }, points);
  }
};

template <PointWord W>
UnitBatch<W> to_unit_batch(const RationalBatch& r) {
  UnitBatch<W> out;
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.push_back(to_unit<W>(r.at(i)));
  return out;
}

template <PointWord W>
UnitBatch<W> to_unit_batch(const PointBatch<W>& b) {
  if (const auto* r = std::get_if<RationalBatch>(&b.points)) return to_unit_batch<W>(*r);
  return std::get<UnitBatch<W>>(b.points);
}

// First N points of the sequence. vdc with include_zero yields x_0 = 0,
// g_b(1), ..., g_b(N-1) over the common denominator b^k, k = digits(N-1);
// kronecker yields {nz} for n = 0..N-1; sqrt_frac yields n = 1..N.
template <PointWord W>
PointBatch<W> generate(const SequenceSpec& spec, std::size_t n) {
  if (n < 1) throw UsageError("generate needs N >= 1");
  PointBatch<W> out;
  switch (spec.kind) {
    case SequenceKind::vdc: {
      if (spec.base < 2) throw UsageError("van der Corput base must be >= 2");
      const std::uint64_t first = spec.include_zero ? 0 : 1;
      const std::uint64_t last = first + n - 1;
      const std::uint32_t k = digit_count(last, spec.base);
      if (RationalPoint::fits(spec.base, k)) {
        RationalBatch r;
        r.base = spec.base;
        r.exponent = k;
        r.numerators.reserve(n);
        for (std::uint64_t i = first; i <= last; ++i) r.numerators.push_back(vdc(i, spec.base).rescaled(k).numerator);
        out.points = std::move(r);
      } else {
        UnitBatch<W> u;
        u.reserve(n);
        for (std::uint64_t i = first; i <= last; ++i) u.push_back(to_unit<W>(vdc(i, spec.base)));
        out.points = std::move(u);
        out.exact_fallback = true;
      }
      break;
    }
    case SequenceKind::kronecker: {
      const W z = rotation_word<W>(spec.z);
      UnitBatch<W> u(n);
      W x = 0;
      for (std::size_t i = 0; i < n; ++i, x += z) u[i].raw = x;
      out.points = std::move(u);
      break;
    }
    case SequenceKind::sqrt_frac: {
      UnitBatch<W> u;
      u.reserve(n);
      for (std::size_t i = 1; i <= n; ++i) u.push_back(sqrt_frac<W>(i));
      out.points = std::move(u);
      break;
    }
    case SequenceKind::iid:
      out.points = iid_uniform<W>(n, spec.seed);
      break;
  }
  return out;
}

// The first `count` points of a batch, same grid.
template <PointWord W>
PointBatch<W> prefix(const PointBatch<W>& batch, std::size_t count) {
  PointBatch<W> out;
  out.exact_fallback = batch.exact_fallback;
  if (const auto* r = std::get_if<RationalBatch>(&batch.points)) {
    RationalBatch p = *r;
    p.numerators.resize(std::min(count, p.numerators.size()));
    out.points = std::move(p);
  } else {
    const auto& u = std::get<UnitBatch<W>>(batch.points);
    out.points = UnitBatch<W>(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(std::min(count, u.size())));
  }
  return out;
}

}  // namespace paircorr
