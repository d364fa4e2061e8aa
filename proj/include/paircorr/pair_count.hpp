#pragma once

// Close-pair counting under the circle norm and the statistic
//   F_N^alpha(s) = #{l != m : ||x_l - x_m|| <= s/N^alpha} / N^(2 - alpha).
// Counts are of ordered pairs and are exact integers; F is reported as double.

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"
#include "paircorr/numutil.hpp"
#include "paircorr/sequences.hpp"

namespace paircorr {

struct PairTally {
  std::uint64_t ordered = 0;
  std::uint64_t ambiguous = 0;  // ordered pairs within the guard band of the threshold
  friend bool operator==(const PairTally&, const PairTally&) = default;
};

inline std::uint64_t all_ordered_pairs(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1); }

// Raw circle grid: values in [0, M), with M = 0 standing for 2^P.
template <PointWord W>
struct CircleGrid {
  W modulus = 0;

  W forward(W from, W to) const {  // (to - from) mod M
    if (modulus == 0) return static_cast<W>(to - from);
    return to >= from ? to - from : static_cast<W>(modulus - (from - to));
  }
  W dist(W a, W b) const {
    W d = forward(b, a);
    W e = forward(a, b);
    return std::min(d, e);
  }
  // Every pair is within thr (thr >= M/2).
  bool covers_all(W thr) const {
    if (modulus == 0) return thr >= (W(1) << (word_bits<W> - 1));
    return thr >= modulus - thr;
  }
  // M - x for x in [0, M); saturates at the word maximum when M = 2^P, x = 0.
  W room_above(W x) const {
    if (modulus == 0) return x == 0 ? static_cast<W>(~W(0)) : static_cast<W>(W(0) - x);
    return modulus - x;
  }
};

// Brute-force O(N^2) count over l != m.
template <PointWord W>
PairTally count_naive_raw(const std::vector<W>& x, CircleGrid<W> grid, W thr, W guard) {
  PairTally t;
  const std::size_t n = x.size();
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = 0; m < n; ++m) {
      if (l == m) continue;
      W d = grid.dist(x[l], x[m]);
      if (d <= thr) ++t.ordered;
      W gap = d > thr ? d - thr : thr - d;
      if (gap <= guard) ++t.ambiguous;
    }
  }
  return t;
}

// Points sorted once; counts at any threshold by a circular two-pointer sweep.
template <PointWord W>
class SortedCircle {
 public:
  SortedCircle(std::vector<W> raw, W modulus = 0) : x_(std::move(raw)), grid_{modulus} {
    std::sort(x_.begin(), x_.end());
  }

  std::size_t size() const { return x_.size(); }
  const std::vector<W>& sorted() const { return x_; }
  CircleGrid<W> grid() const { return grid_; }

  // Unordered pairs {i, j} with circle distance <= thr. Each pair is seen from
  // exactly one endpoint: from i when the clockwise distance i -> j is <= thr.
  std::uint64_t unordered_within(W thr) const {
    const std::size_t n = x_.size();
    if (n < 2) return 0;
    if (grid_.covers_all(thr)) return all_ordered_pairs(n) / 2;
    // clockwise distance through the wrap point: M - (x_i - x_j) <= thr
    const bool can_wrap = !(grid_.modulus == 0 && thr == 0);
    const W wrap_gap = grid_.modulus == 0 ? static_cast<W>(W(0) - thr) : grid_.modulus - thr;
    std::uint64_t total = 0;
    std::size_t ahead = 0, wrapped = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (ahead < i + 1) ahead = i + 1;
      while (ahead < n && x_[ahead] - x_[i] <= thr) ++ahead;
      total += ahead - i - 1;
      if (can_wrap) {
        while (wrapped < i && x_[i] - x_[wrapped] >= wrap_gap) ++wrapped;
        total += wrapped;
      }
    }
    return total;
  }

  std::uint64_t ordered_within(W thr) const { return 2 * unordered_within(thr); }

  PairTally tally(W thr, W guard) const {
    PairTally t;
    t.ordered = ordered_within(thr);
    const W top = static_cast<W>(~W(0));
    const W upper = thr > top - guard ? top : static_cast<W>(thr + guard);
    const std::uint64_t hi = grid_.covers_all(upper) ? all_ordered_pairs(size()) : ordered_within(upper);
    const std::uint64_t lo = thr < W(guard) + 1 ? 0 : ordered_within(static_cast<W>(thr - guard - 1));
    t.ambiguous = hi - lo;
    return t;
  }

  // For each sorted rank i, the number of j != i within thr of x_i. Window
  // lookups by binary search, independent of the sweep above.
  std::vector<std::uint64_t> neighbor_counts(W thr) const {
    const std::size_t n = x_.size();
    std::vector<std::uint64_t> out(n);
    if (grid_.covers_all(thr)) {
      std::fill(out.begin(), out.end(), n - 1);
      return out;
    }
    auto in_range = [&](W lo, W hi) -> std::uint64_t {  // values in [lo, hi]
      auto a = std::lower_bound(x_.begin(), x_.end(), lo);
      auto b = std::upper_bound(x_.begin(), x_.end(), hi);
      return b > a ? static_cast<std::uint64_t>(b - a) : 0;
    };
    const W top = grid_.modulus == 0 ? static_cast<W>(~W(0)) : grid_.modulus - 1;
    for (std::size_t i = 0; i < n; ++i) {
      const W v = x_[i];
      std::uint64_t c;
      if (v < thr) {
        c = in_range(0, v + thr) + in_range(static_cast<W>(top - (thr - v) + 1), top);
      } else if (grid_.room_above(v) <= thr) {
        c = in_range(v - thr, top) + in_range(0, static_cast<W>(thr - grid_.room_above(v)));
      } else {
        c = in_range(v - thr, v + thr);
      }
      out[i] = c - 1;
    }
    return out;
  }

  // Smallest circle distance between two of the points.
  W min_distance() const {
    const std::size_t n = x_.size();
    if (n < 2) throw UsageError("min_pair_distance needs N >= 2");
    // the closest pair on a circle is a pair of sorted neighbours
    W best = static_cast<W>(~W(0));
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, grid_.dist(x_[i], x_[(i + 1) % n]));
    return best;
  }

 private:
  std::vector<W> x_;
  CircleGrid<W> grid_;
};

template <PointWord W>
std::vector<W> raw_words(const UnitBatch<W>& pts) {
  std::vector<W> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = pts[i].raw;
  return out;
}

template <PointWord W>
PairTally pair_count_naive(const UnitBatch<W>& pts, CircleDistance<W> thr, W guard = kDefaultGuardBand) {
  return count_naive_raw(raw_words(pts), CircleGrid<W>{0}, thr.raw, guard);
}

// Exact mode: integer comparisons on the b^k grid, no ambiguity.
inline PairTally pair_count_naive(const RationalBatch& pts, u128 thr_numerator) {
  PairTally t = count_naive_raw(pts.numerators, CircleGrid<u128>{pts.modulus()}, thr_numerator, u128(0));
  t.ambiguous = 0;
  return t;
}

template <PointWord W>
PairTally pair_count_fast(const UnitBatch<W>& pts, CircleDistance<W> thr, W guard = kDefaultGuardBand) {
  return SortedCircle<W>(raw_words(pts)).tally(thr.raw, guard);
}

inline PairTally pair_count_fast(const RationalBatch& pts, u128 thr_numerator) {
  return {SortedCircle<u128>(pts.numerators, pts.modulus()).ordered_within(thr_numerator), 0};
}

struct PairCountResult {
  std::uint64_t n = 0;
  double alpha = 0;
  double s = 0;
  HiFloat threshold = 0;  // s/N^alpha before rounding
  bool degenerate = false;
  std::uint64_t ordered_pair_count = 0;
  double f = 0;
  std::uint64_t ambiguous_pairs = 0;

  double abs_err_vs_2s() const { return std::abs(f - 2 * s); }
};

// count / N^(2 - alpha)
inline double normalized_count(std::uint64_t count, std::uint64_t n, double alpha) {
  HiFloat denom = boost::multiprecision::pow(HiFloat(n), HiFloat(2) - decimal_of(alpha));
  return static_cast<double>(HiFloat(count) / denom);
}

namespace detail {

inline void check_stat_args(std::size_t n, double s, double alpha) {
  if (n < 2) throw UsageError("f_stat needs N >= 2");
  if (!(alpha > 0 && alpha <= 1)) throw UsageError("alpha must lie in (0, 1]");
  if (!(s > 0)) throw UsageError("s must be positive");
}

template <PointWord W>
PairCountResult stat_on(const SortedCircle<W>& sc, double s, double alpha, unsigned guard) {
  PairCountResult r;
  r.n = sc.size();
  r.s = s;
  r.alpha = alpha;
  const Threshold<W> t = threshold_from<W>(s, r.n, alpha, guard);
  r.threshold = t.real;
  r.degenerate = t.degenerate;
  if (t.degenerate) {
    r.ordered_pair_count = all_ordered_pairs(r.n);
  } else {
    PairTally tally = sc.tally(t.distance.raw, static_cast<W>(guard));
    r.ordered_pair_count = tally.ordered;
    r.ambiguous_pairs = tally.ambiguous;
  }
  r.f = normalized_count(r.ordered_pair_count, r.n, alpha);
  return r;
}

inline PairCountResult stat_on_grid(const SortedCircle<u128>& sc, double s, double alpha) {
  PairCountResult r;
  r.n = sc.size();
  r.s = s;
  r.alpha = alpha;
  r.threshold = scaled_window(decimal_of(s), r.n, decimal_of(alpha));
  const BigInt modulus = to_big<u128>(sc.grid().modulus);
  const BigInt k = grid_threshold_numerator(r.threshold, modulus);
  r.degenerate = 2 * k >= modulus;
  r.ordered_pair_count = r.degenerate ? all_ordered_pairs(r.n) : sc.ordered_within(from_big<u128>(k));
  r.f = normalized_count(r.ordered_pair_count, r.n, alpha);
  return r;
}

}  // namespace detail

template <PointWord W>
PairCountResult f_stat(const UnitBatch<W>& pts, double s, double alpha, unsigned guard = kDefaultGuardBand) {
  detail::check_stat_args(pts.size(), s, alpha);
  return detail::stat_on(SortedCircle<W>(raw_words(pts)), s, alpha, guard);
}

inline PairCountResult f_stat(const RationalBatch& pts, double s, double alpha) {
  detail::check_stat_args(pts.size(), s, alpha);
  return detail::stat_on_grid(SortedCircle<u128>(pts.numerators, pts.modulus()), s, alpha);
}

template <PointWord W>
PairCountResult f_stat(const PointBatch<W>& batch, double s, double alpha, unsigned guard = kDefaultGuardBand) {
  if (const auto* r = std::get_if<RationalBatch>(&batch.points)) return f_stat(*r, s, alpha);
  return f_stat(std::get<UnitBatch<W>>(batch.points), s, alpha, guard);
}

struct ProfileRow {
  std::string sequence;
  std::string params;
  PairCountResult result;
};

struct ProfileOptions {
  std::size_t max_points = std::size_t(1) << 27;
  unsigned guard = kDefaultGuardBand;
};

// One row per (N, alpha, s), in that lexicographic order, over prefixes of
// one batch. Each N is sorted once and shared by its cells.
template <PointWord W>
std::vector<ProfileRow> f_stat_profile(const PointBatch<W>& all, const std::string& sequence,
                                       const std::string& params, const std::vector<std::uint64_t>& n_list,
                                       std::vector<double> alpha_list, std::vector<double> s_list,
                                       const ProfileOptions& opt = {}) {
  if (n_list.empty() || alpha_list.empty() || s_list.empty()) throw UsageError("profile lists must be non-empty");
  if (!std::is_sorted(n_list.begin(), n_list.end())) throw UsageError("N list must be ascending");
  if (n_list.back() > all.size()) throw UsageError("N = " + std::to_string(n_list.back()) + " exceeds the batch size");
  std::sort(alpha_list.begin(), alpha_list.end());
  std::sort(s_list.begin(), s_list.end());
  for (double a : alpha_list) detail::check_stat_args(2, 1, a);
  for (double s : s_list) detail::check_stat_args(2, s, 1);

  std::vector<ProfileRow> rows;
  for (std::uint64_t n : n_list) {
    if (n < 2) throw UsageError("profile N must be >= 2");
    auto emit = [&](auto&& eval) {
      for (double a : alpha_list)
        for (double s : s_list) rows.push_back({sequence, params, eval(s, a)});
    };
    if (const auto* r = std::get_if<RationalBatch>(&all.points)) {
      std::vector<u128> head(r->numerators.begin(), r->numerators.begin() + static_cast<std::ptrdiff_t>(n));
      SortedCircle<u128> sc(std::move(head), r->modulus());
      emit([&](double s, double a) { return detail::stat_on_grid(sc, s, a); });
    } else {
      const auto& u = std::get<UnitBatch<W>>(all.points);
      std::vector<W> head(n);
      for (std::size_t i = 0; i < n; ++i) head[i] = u[i].raw;
      SortedCircle<W> sc(std::move(head));
      emit([&](double s, double a) { return detail::stat_on(sc, s, a, opt.guard); });
    }
  }
  return rows;
}

// Same, generating the longest prefix of the sequence once.
template <PointWord W>
std::vector<ProfileRow> f_stat_profile(const SequenceSpec& spec, const std::vector<std::uint64_t>& n_list,
                                       std::vector<double> alpha_list, std::vector<double> s_list,
                                       const ProfileOptions& opt = {}) {
  if (n_list.empty()) throw UsageError("profile lists must be non-empty");
  if (!std::is_sorted(n_list.begin(), n_list.end())) throw UsageError("N list must be ascending");
  const std::uint64_t n_max = n_list.back();
  if (n_max > opt.max_points) {
    throw UsageError("N = " + std::to_string(n_max) + " exceeds the point cap " + std::to_string(opt.max_points));
  }
  return f_stat_profile<W>(generate<W>(spec, n_max), to_string(spec.kind), spec.params(), n_list,
                           std::move(alpha_list), std::move(s_list), opt);
}

// Counts at s/N^alpha2 and at (s N^(alpha1 - alpha2))/N^alpha1 agree. Both
// reals go through the same round-to-nearest.
template <PointWord W>
bool rescaling_identity_check(const UnitBatch<W>& pts, double s, double alpha1, double alpha2) {
  if (alpha1 < alpha2) throw UsageError("rescaling identity needs alpha1 >= alpha2");
  const std::uint64_t n = pts.size();
  const HiFloat sh = decimal_of(s), a1 = decimal_of(alpha1), a2 = decimal_of(alpha2);
  const HiFloat stretched = sh * boost::multiprecision::pow(HiFloat(n), a1 - a2);
  const Threshold<W> direct = threshold_from<W>(sh, n, a2, 0);
  const Threshold<W> via = threshold_from<W>(stretched, n, a1, 0);
  SortedCircle<W> sc(raw_words(pts));
  auto count = [&](const Threshold<W>& t) {
    return t.degenerate ? all_ordered_pairs(n) : sc.ordered_within(t.distance.raw);
  };
  return count(direct) == count(via);
}

template <PointWord W>
CircleDistance<W> min_pair_distance(const UnitBatch<W>& pts) {
  return {SortedCircle<W>(raw_words(pts)).min_distance(), Exactness::exact};
}

inline RationalDistance min_pair_distance(const RationalBatch& pts) {
  SortedCircle<u128> sc(pts.numerators, pts.modulus());
  return {sc.min_distance(), pts.base, pts.exponent};
}

}  // namespace paircorr
