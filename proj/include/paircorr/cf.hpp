#pragma once

// Continued fractions z = [a_0; a_1, a_2, ...] with the standard convergent
// recurrence p_i = a_i p_{i-1} + p_{i-2}, q_i = a_i q_{i-1} + q_{i-2} from
// p_{-1} = 1, q_{-1} = 0, p_0 = a_0, q_0 = 1.
//
// Ostrowski digits are indexed by place value Q_i := q_{i-1} (so Q_0 = 0,
// Q_1 = 1, Q_2 = a_1, ...): N = sum_{i>=1} b_i Q_i with 0 <= b_i <= a_i and
// b_{i-1} = 0 whenever b_i = a_i. For phi, Q_i is the Fibonacci number F_i.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"

namespace paircorr {

class ContinuedFraction {
 public:
  ContinuedFraction() = default;

  // tails[i], when given, is the complete quotient t_i = [a_i; a_{i+1}, ...].
  explicit ContinuedFraction(std::vector<BigInt> quotients, std::vector<Fixed192> tails = {},
                             bool terminated = false, bool truncated = false)
      : a_(std::move(quotients)), tails_(std::move(tails)), terminated_(terminated), truncated_(truncated) {
    if (a_.empty()) throw UsageError("continued fraction needs a_0");
    if (a_[0] < 0) throw UsageError("a_0 must be >= 0");
    for (std::size_t i = 1; i < a_.size(); ++i)
      if (a_[i] < 1) throw UsageError("partial quotients a_i (i >= 1) must be >= 1");
    p_ = {1, a_[0]};
    q_ = {0, 1};
    for (std::size_t i = 1; i < a_.size(); ++i) {
      p_.push_back(a_[i] * p_[i] + p_[i - 1]);
      q_.push_back(a_[i] * q_[i] + q_[i - 1]);
    }
  }

  // Index of the last partial quotient.
  int last() const { return static_cast<int>(a_.size()) - 1; }
  const BigInt& a(int i) const { return a_.at(static_cast<std::size_t>(i)); }
  const std::vector<BigInt>& quotients() const { return a_; }
  const BigInt& p(int i) const { return p_.at(static_cast<std::size_t>(i + 1)); }
  const BigInt& q(int i) const { return q_.at(static_cast<std::size_t>(i + 1)); }
  bool has_tail(int i) const { return i >= 0 && static_cast<std::size_t>(i) < tails_.size(); }
  const Fixed192& tail(int i) const { return tails_.at(static_cast<std::size_t>(i)); }

  // The expansion ended exactly (rational input): z = p_last / q_last.
  bool terminated() const { return terminated_; }
  // Precision ran out before the requested number of terms.
  bool truncated() const { return truncated_; }

  // Ostrowski place value Q_i = q_{i-1}.
  const BigInt& place(int i) const { return q(i - 1); }

 private:
  std::vector<BigInt> a_;
  std::vector<Fixed192> tails_;
  std::vector<BigInt> p_, q_;  // shifted by one: p_[0] = p_{-1}
  bool terminated_ = false;
  bool truncated_ = false;
};

namespace detail {

// One Euclid step on t = num/den: returns floor(t) and leaves num/den = 1/{t}.
// Returns false when {t} = 0.
inline bool cf_step(BigInt& num, BigInt& den, BigInt& quotient) {
  quotient = floor_div(num, den);
  BigInt rem = num - quotient * den;
  if (rem == 0) return false;
  num = den;
  den = rem;
  return true;
}

}  // namespace detail

// Exact expansion of num/den > 0.
inline ContinuedFraction cf_expand(const BigInt& num, const BigInt& den, std::size_t max_terms = 1000) {
  if (den <= 0 || num <= 0) throw UsageError("cf_expand needs a positive value");
  if (max_terms == 0) throw UsageError("cf_expand needs max_terms >= 1");
  std::vector<BigInt> a;
  std::vector<Fixed192> tails;
  BigInt u = num, v = den, quotient;
  bool terminated = false;
  while (a.size() < max_terms) {
    tails.push_back(Fixed192::from_ratio(u, v));
    bool more = detail::cf_step(u, v, quotient);
    a.push_back(quotient);
    if (!more) {
      terminated = true;
      break;
    }
  }
  return ContinuedFraction(std::move(a), std::move(tails), terminated, false);
}

// Expansion of a fixed-point value known to +-1 ulp. A partial quotient is
// emitted only when both ends of the uncertainty interval agree on it.
inline ContinuedFraction cf_expand(const Fixed192& value, std::size_t max_terms = 1000) {
  if (value.raw() <= 0) throw UsageError("cf_expand needs a positive value");
  const BigInt scale = pow2(Fixed192::kFracBits);
  BigInt mid_n = value.raw(), mid_d = scale;
  BigInt lo_n = value.raw() - 1, lo_d = scale;
  BigInt hi_n = value.raw() + 1, hi_d = scale;
  std::vector<BigInt> a;
  std::vector<Fixed192> tails;
  bool terminated = false, truncated = false;
  while (a.size() < max_terms) {
    if (lo_n <= 0) {
      truncated = true;
      break;
    }
    BigInt qm, ql, qh;
    tails.push_back(Fixed192::from_ratio(mid_n, mid_d));
    BigInt tm_n = mid_n, tm_d = mid_d, tl_n = lo_n, tl_d = lo_d, th_n = hi_n, th_d = hi_d;
    bool more_m = detail::cf_step(tm_n, tm_d, qm);
    bool more_l = detail::cf_step(tl_n, tl_d, ql);
    bool more_h = detail::cf_step(th_n, th_d, qh);
    if (qm != ql || qm != qh) {
      tails.pop_back();
      truncated = true;
      break;
    }
    a.push_back(qm);
    if (!more_m) {
      terminated = true;
      break;
    }
    if (!more_l || !more_h) {
      truncated = true;  // an interval end is rational here; the next quotient is unbounded
      break;
    }
    mid_n = tm_n;
    mid_d = tm_d;
    lo_n = tl_n;
    lo_d = tl_d;
    hi_n = th_n;
    hi_d = th_d;
  }
  if (a.empty()) throw UsageError("cf_expand: value too imprecise for even a_0");
  return ContinuedFraction(std::move(a), std::move(tails), terminated, truncated);
}

// phi = [1; 1, 1, ...] to `terms` quotients, every complete quotient = phi.
inline ContinuedFraction golden_cf(std::size_t terms = 100) {
  if (terms == 0) throw UsageError("golden_cf needs at least one term");
  return ContinuedFraction(std::vector<BigInt>(terms, BigInt(1)), std::vector<Fixed192>(terms, golden_ratio()));
}

// (p_i, q_i) for i = 0..last.
inline std::vector<std::pair<BigInt, BigInt>> convergents(const ContinuedFraction& cf) {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (int i = 0; i <= cf.last(); ++i) out.emplace_back(cf.p(i), cf.q(i));
  return out;
}

// [a_0; ...; a_i] evaluated from the tail as an exact fraction.
inline std::pair<BigInt, BigInt> evaluate_prefix(const ContinuedFraction& cf, int i) {
  BigInt num = cf.a(i), den = 1;
  for (int j = i - 1; j >= 0; --j) {
    // a_j + 1/(num/den) = (a_j num + den)/num
    BigInt n2 = cf.a(j) * num + den;
    den = num;
    num = n2;
  }
  return {num, den};
}

struct Residue {
  Fixed192 direct;       // z - p_n/q_n by subtraction
  Fixed192 closed_form;  // (-1)^n / (q_n (t_{n+1} q_n + q_{n-1}))
};

inline constexpr unsigned kResidueToleranceBits = Fixed192::kFracBits - 8;

// z - p_n/q_n computed two ways; they must agree within 2^-184.
inline Residue residue(const Fixed192& z, const ContinuedFraction& cf, int n) {
  if (n < 0 || n > cf.last()) throw UsageError("residue: index outside the expansion");
  Residue r;
  r.direct = z - Fixed192::from_ratio(cf.p(n), cf.q(n));
  if (n == cf.last() && cf.terminated()) {
    r.closed_form = Fixed192();
  } else {
    if (!cf.has_tail(n + 1)) throw UsageError("residue: complete quotient t_{n+1} not available");
    Fixed192 denom = (cf.tail(n + 1) * cf.q(n) + Fixed192::from_int(cf.q(n - 1))) * cf.q(n);
    Fixed192 mag = Fixed192::from_int(1) / denom;
    r.closed_form = (n % 2 == 0) ? mag : -mag;
  }
  if ((r.direct - r.closed_form).abs().raw() > pow2(Fixed192::kFracBits - kResidueToleranceBits)) {
    throw ConsistencyError("residue: direct and closed-form values disagree at n = " + std::to_string(n));
  }
  return r;
}

// K_l = |q_l z - p_l| through the closed form; K_{-1} = 1.
inline Fixed192 convergent_error(const Fixed192& z, const ContinuedFraction& cf, int l) {
  if (l == -1) return Fixed192::from_int(1);
  return (residue(z, cf, l).closed_form * cf.q(l)).abs();
}

class OstrowskiRep {
 public:
  OstrowskiRep(std::vector<BigInt> digits, std::vector<BigInt> places)
      : b_(std::move(digits)), places_(std::move(places)) {}

  // b_i for i = 0..top(); b_0 is always 0.
  const BigInt& digit(int i) const { return b_.at(static_cast<std::size_t>(i)); }
  // Q_i = q_{i-1}
  const BigInt& place(int i) const { return places_.at(static_cast<std::size_t>(i)); }
  int top() const { return static_cast<int>(b_.size()) - 1; }
  int lowest_nonzero() const {
    for (int i = 1; i <= top(); ++i)
      if (b_[static_cast<std::size_t>(i)] != 0) return i;
    return 0;
  }

  BigInt value() const { return weighted(0); }
  // sum b_i Q_{i - shift}
  BigInt weighted(int shift) const {
    BigInt sum = 0;
    for (int i = 1; i <= top(); ++i) {
      int j = i - shift;
      if (j >= 0 && b_[static_cast<std::size_t>(i)] != 0) sum += b_[static_cast<std::size_t>(i)] * place(j);
    }
    return sum;
  }

 private:
  std::vector<BigInt> b_;
  std::vector<BigInt> places_;  // Q_0 .. Q_top
};

// Greedy Ostrowski digits of n >= 1 from the largest place value down; equal
// place values (Q_1 = Q_2 = 1 for phi) go to the higher index.
inline OstrowskiRep ostrowski(const BigInt& n, const ContinuedFraction& cf) {
  if (n < 1) throw UsageError("ostrowski needs N >= 1");
  // need Q_{m+1} = q_m > n to certify the top index
  if (cf.q(cf.last()) <= n && !cf.terminated()) {
    throw UsageError("ostrowski: continued fraction too short for N = " + n.str());
  }
  int m = 1;
  while (m + 1 <= cf.last() + 1 && cf.place(m + 1) <= n) ++m;
  std::vector<BigInt> places;
  for (int i = 0; i <= m; ++i) places.push_back(cf.place(i));
  std::vector<BigInt> b(static_cast<std::size_t>(m) + 1, BigInt(0));
  BigInt rem = n;
  for (int i = m; i >= 1; --i) {
    BigInt d = rem / places[static_cast<std::size_t>(i)];
    bool bounded = i <= cf.last();  // a_i exists
    if (bounded && d > cf.a(i)) d = cf.a(i);
    b[static_cast<std::size_t>(i)] = d;
    rem -= d * places[static_cast<std::size_t>(i)];
  }
  if (rem != 0) throw ConsistencyError("ostrowski: greedy left a remainder");
  while (b.size() > 2 && b.back() == 0) {
    b.pop_back();
    places.pop_back();
  }
  return OstrowskiRep(std::move(b), std::move(places));
}

// Whether every digit obeys 0 <= b_i <= a_i and b_{i-1} = 0 when b_i = a_i.
inline bool is_admissible(const OstrowskiRep& rep, const ContinuedFraction& cf) {
  for (int i = 1; i <= rep.top(); ++i) {
    const BigInt& d = rep.digit(i);
    if (d < 0) return false;
    if (i <= cf.last()) {
      if (d > cf.a(i)) return false;
      if (d == cf.a(i) && i >= 2 && rep.digit(i - 1) != 0) return false;
    }
  }
  return true;
}

// sum b_i Q_i / sum b_i Q_{i-1}, exact, returned at 192 bits.
inline Fixed192 lemma11_ratio(const OstrowskiRep& rep) {
  BigInt num = rep.weighted(0);
  BigInt den = rep.weighted(1);
  if (den == 0) throw DomainError("lemma11_ratio: sum b_i Q_{i-1} is zero");
  return Fixed192::from_ratio(num, den);
}

// (1 + 1/phi^2) * ||q_{h-1} phi|| * q_h for the golden expansion.
inline Fixed192 lemma12_value(int h, const ContinuedFraction& golden = golden_cf(128)) {
  if (h < 2) throw UsageError("lemma12_value needs h >= 2");
  if (h + 1 > golden.last()) throw UsageError("lemma12_value: expansion too short");
  const Fixed192& phi = golden_ratio();
  Fixed192 factor = Fixed192::from_int(1) + Fixed192::from_int(1) / (phi * phi);
  Fixed192 k = convergent_error(phi, golden, h - 1);
  return factor * k * golden.q(h);
}

// "[3; 7, 16]", with a trailing ", …" for an unfinished expansion.
inline std::string render_cf(const ContinuedFraction& cf) {
  std::string out = "[" + cf.a(0).str();
  for (int i = 1; i <= cf.last(); ++i) out += (i == 1 ? "; " : ", ") + cf.a(i).str();
  if (!cf.terminated()) out += cf.last() == 0 ? "; …" : ", …";
  return out + "]";
}

// "b_i@i" pairs, highest index first, zero digits omitted.
inline std::string render_ostrowski(const OstrowskiRep& rep) {
  std::string out;
  for (int i = rep.top(); i >= 1; --i) {
    if (rep.digit(i) == 0) continue;
    if (!out.empty()) out += ", ";
    out += rep.digit(i).str() + "@" + std::to_string(i);
  }
  return out;
}

// "12 = 8 + 3 + 1" spelled with place values.
inline std::string render_ostrowski_sum(const OstrowskiRep& rep) {
  std::string out = rep.value().str() + " =";
  bool first = true;
  for (int i = rep.top(); i >= 1; --i) {
    if (rep.digit(i) == 0) continue;
    out += first ? " " : " + ";
    first = false;
    if (rep.digit(i) != 1) out += rep.digit(i).str() + "*";
    out += rep.place(i).str();
  }
  return out;
}

}  // namespace paircorr
