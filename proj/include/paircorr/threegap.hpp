#pragma once

// Gap structure of Kronecker orbits: predicted lengths from the continued
// fraction of the rotation, empirical gap censuses, and the interval/count
// checks used for the golden-mean orbit.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "paircorr/cf.hpp"
#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"
#include "paircorr/numutil.hpp"
#include "paircorr/pair_count.hpp"
#include "paircorr/sequences.hpp"

namespace paircorr {

// Lengths in raw units of 2^-P. For N points {nz}, n = 0..N-1, with
// N = r q_m + q_{m-1} + s (1 <= r <= a_{m+1}, 0 <= s < q_m):
//   L2 = K_m, L1 = K_{m-1} - r K_m, L3 = L1 + L2,  K_l = |q_l z - p_l|.
struct GapPrediction {
  unsigned precision = 64;
  BigInt k_m = 0;
  BigInt k_m_minus_1 = 0;
  BigInt l1 = 0, l2 = 0, l3 = 0;
  int m = 0;
  BigInt r = 0;
  BigInt s = 0;

  std::vector<BigInt> lengths() const { return {l1, l2, l3}; }
  // Whether `length` is within `ulps` of L1, L2 or L3.
  bool admits(const BigInt& length, unsigned ulps = 1) const {
    for (const BigInt& l : lengths()) {
      BigInt d = length - l;
      if (d < 0) d = -d;
      if (d <= ulps) return true;
    }
    return false;
  }
};

// Continued fraction of the rotation actually realized at precision P, i.e.
// of the dyadic rational Z / 2^P.
template <PointWord W>
ContinuedFraction realized_rotation_cf(const ZSpec& z) {
  const W word = rotation_word<W>(z);
  if (word == 0) throw UsageError("rotation word is zero at this precision");
  return cf_expand(to_big<W>(word), pow2(word_bits<W>));
}

template <PointWord W>
GapPrediction predict_gaps(const ZSpec& z, std::uint64_t n) {
  if (n < 2) throw UsageError("predict_gaps needs N >= 2");
  constexpr unsigned bits = word_bits<W>;
  const ContinuedFraction cf = realized_rotation_cf<W>(z);
  const Fixed192 zf = Fixed192::from_ratio(to_big<W>(rotation_word<W>(z)), pow2(bits));
  const BigInt big_n = n;

  int m = 0;
  while (m + 1 <= cf.last() && cf.q(m + 1) + cf.q(m) <= big_n) ++m;
  BigInt r = (big_n - cf.q(m - 1)) / cf.q(m);
  if (m + 1 <= cf.last() && r > cf.a(m + 1)) r = cf.a(m + 1);
  if (r < 1) throw ConsistencyError("predict_gaps: no level for N = " + big_n.str());

  GapPrediction g;
  g.precision = bits;
  g.m = m;
  g.r = r;
  g.s = big_n - r * cf.q(m) - cf.q(m - 1);
  g.k_m = convergent_error(zf, cf, m).round_to_bits(bits);
  g.k_m_minus_1 = convergent_error(zf, cf, m - 1).round_to_bits(bits);
  g.l2 = g.k_m;
  g.l1 = g.k_m_minus_1 - r * g.k_m;
  g.l3 = g.l1 + g.l2;
  return g;
}

struct GapEntry {
  BigInt length = 0;  // raw units
  std::uint64_t multiplicity = 0;
};

struct GapCensus {
  unsigned precision = 64;
  std::size_t n = 0;
  std::vector<GapEntry> entries;  // ascending by length
  bool has_duplicates = false;    // a zero-length gap occurred

  std::uint64_t total_multiplicity() const {
    std::uint64_t t = 0;
    for (const auto& e : entries) t += e.multiplicity;
    return t;
  }
  BigInt total_length() const {
    BigInt t = 0;
    for (const auto& e : entries) t += e.length * e.multiplicity;
    return t;
  }
};

// Circular gaps of the sorted points, length -> multiplicity. With
// merge_adjacent_ulp, lengths one ulp apart are folded into the shorter one.
template <PointWord W>
GapCensus gap_census(const UnitBatch<W>& pts, bool merge_adjacent_ulp = false) {
  const std::size_t n = pts.size();
  if (n < 2) throw UsageError("gap_census needs N >= 2 points");
  std::vector<W> x = raw_words(pts);
  std::sort(x.begin(), x.end());
  std::map<BigInt, std::uint64_t> counts;
  for (std::size_t i = 0; i + 1 < n; ++i) ++counts[to_big<W>(static_cast<W>(x[i + 1] - x[i]))];
  // wrap gap x_0 + 2^P - x_{N-1}, which is the whole circle if all points coincide
  ++counts[to_big<W>(x[0]) + pow2(word_bits<W>) - to_big<W>(x[n - 1])];

  GapCensus c;
  c.precision = word_bits<W>;
  c.n = n;
  for (const auto& [len, mult] : counts) {
    if (merge_adjacent_ulp && !c.entries.empty() && len - c.entries.back().length == 1) {
      c.entries.back().multiplicity += mult;
    } else {
      c.entries.push_back({len, mult});
    }
  }
  c.has_duplicates = !c.entries.empty() && c.entries.front().length == 0;
  return c;
}

enum class GapClass : std::uint8_t { small, large, other };

// Gaps of a point set in sorted order, each classed by exact raw length: the
// shortest length is small, the longest large, a third one other.
template <PointWord W>
class GapLayout {
 public:
  explicit GapLayout(const UnitBatch<W>& pts) {
    const std::size_t n = pts.size();
    if (n < 2) throw UsageError("gap layout needs N >= 2 points");
    std::vector<W> x = raw_words(pts);
    std::sort(x.begin(), x.end());
    std::vector<W> gaps(n);
    for (std::size_t i = 0; i < n; ++i) gaps[i] = static_cast<W>(x[(i + 1) % n] - x[i]);
    std::vector<W> distinct = gaps;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() > 3) {
      throw UsageError("more than three gap lengths: not a Kronecker orbit at N = q_h");
    }
    distinct_ = distinct.size();
    cls_.resize(n);
    large_prefix_.assign(2 * n + 1, 0);
    small_prefix_.assign(2 * n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (distinct.size() >= 2 && gaps[i] == distinct.back()) {
        cls_[i] = GapClass::large;
      } else if (gaps[i] == distinct.front()) {
        cls_[i] = GapClass::small;
      } else {
        cls_[i] = GapClass::other;
      }
    }
    for (std::size_t i = 0; i < 2 * n; ++i) {
      large_prefix_[i + 1] = large_prefix_[i] + (cls_[i % n] == GapClass::large);
      small_prefix_[i + 1] = small_prefix_[i] + (cls_[i % n] == GapClass::small);
    }
  }

  std::size_t size() const { return cls_.size(); }
  std::size_t distinct_lengths() const { return distinct_; }
  GapClass at(std::size_t rank) const { return cls_[rank % cls_.size()]; }
  // gaps with ranks n .. n+k-1 (mod N)
  std::uint64_t large_in(std::size_t start, std::size_t k) const { return window(large_prefix_, start, k); }
  std::uint64_t small_in(std::size_t start, std::size_t k) const { return window(small_prefix_, start, k); }

 private:
  std::uint64_t window(const std::vector<std::uint64_t>& prefix, std::size_t start, std::size_t k) const {
    const std::size_t n = cls_.size();
    if (k > n) throw UsageError("interval wider than the circle");
    start %= n;
    return prefix[start + k] - prefix[start];
  }

  std::vector<GapClass> cls_;
  std::vector<std::uint64_t> large_prefix_, small_prefix_;
  std::size_t distinct_ = 0;
};

struct IntervalComposition {
  std::size_t start = 0;
  std::size_t width = 0;
  std::uint64_t small = 0;
  std::uint64_t large = 0;
  std::uint64_t other = 0;
  BigInt expected_large = 0;  // g = sum b_i Q_{i-1} for the Ostrowski digits of k
};

// Large-gap count predicted for a window of k gaps: g = sum b_i Q_{i-1}.
inline BigInt expected_large_gaps(std::uint64_t k, const ContinuedFraction& cf) {
  return ostrowski(BigInt(k), cf).weighted(1);
}

// Composition of J_k(x_n*) = (x_n*, x_{n+k}*]: the k gaps between sorted ranks
// n..n+k, glued modulo N.
template <PointWord W>
IntervalComposition interval_composition(const GapLayout<W>& layout, std::size_t start, std::size_t k,
                                         const ContinuedFraction& cf) {
  IntervalComposition c;
  c.start = start;
  c.width = k;
  c.large = layout.large_in(start, k);
  c.small = layout.small_in(start, k);
  c.other = k - c.large - c.small;
  c.expected_large = expected_large_gaps(k, cf);
  return c;
}

struct Lemma9Result {
  std::size_t l = 0;
  std::uint64_t count = 0;  // m != l with ||x_l - x_m|| <= s/N^alpha
  double normalized = 0;    // count / N^(1 - alpha)
  double lower = 0, upper = 0;  // s/2, 4s
  bool within_bounds = false;
  bool vacuous = false;  // window below the minimal gap
};

// Per-point count for the golden orbit x_1..x_N (batch index l-1 holds x_l).
template <PointWord W>
Lemma9Result lemma9_bounds_check(const UnitBatch<W>& orbit, std::size_t l, double s, double alpha,
                                 unsigned guard = kDefaultGuardBand) {
  const std::size_t n = orbit.size();
  if (l < 1 || l > n) throw UsageError("lemma9: need 1 <= l <= N");
  const Threshold<W> t = threshold_from<W>(s, n, alpha, guard);
  Lemma9Result r;
  r.l = l;
  const UnitPoint<W> xl = orbit[l - 1];
  for (std::size_t m = 0; m < n; ++m) {
    if (m == l - 1) continue;
    if (t.degenerate || circle_dist(xl, orbit[m]).raw <= t.distance.raw) ++r.count;
  }
  r.normalized = static_cast<double>(HiFloat(r.count) /
                                     boost::multiprecision::pow(HiFloat(n), HiFloat(1) - decimal_of(alpha)));
  r.lower = s / 2;
  r.upper = 4 * s;
  r.vacuous = r.count == 0;
  r.within_bounds = r.normalized > r.lower && r.normalized < r.upper;
  return r;
}

// x_1..x_N of {n phi}.
template <PointWord W>
UnitBatch<W> golden_orbit_from_one(std::size_t n) {
  const W z = rotation_word<W>(ZSpec::golden());
  UnitBatch<W> out(n);
  W x = 0;
  for (std::size_t i = 0; i < n; ++i) {
    x += z;
    out[i].raw = x;
  }
  return out;
}

template <PointWord W>
Lemma9Result lemma9_bounds_check(std::size_t l, std::size_t n, double s, double alpha) {
  return lemma9_bounds_check(golden_orbit_from_one<W>(n), l, s, alpha);
}

}  // namespace paircorr
