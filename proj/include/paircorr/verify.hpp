#pragma once

// Named verification suites. Each returns a report of individual checks; a
// report passes iff every check passes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "paircorr/cf.hpp"
#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"
#include "paircorr/io.hpp"
#include "paircorr/numutil.hpp"
#include "paircorr/pair_count.hpp"
#include "paircorr/sequences.hpp"
#include "paircorr/threegap.hpp"

namespace paircorr {

struct CheckRecord {
  std::string description;
  std::string expected;
  std::string observed;
  std::string tolerance;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
  }
  void add(std::string description, std::string expected, std::string observed, std::string tolerance, bool pass) {
    checks.push_back({std::move(description), std::move(expected), std::move(observed), std::move(tolerance), pass});
  }
};

inline void write_report_csv(std::ostream& os, const VerificationReport& r) {
  os << "suite,description,expected,observed,tolerance,pass\n";
  for (const auto& c : r.checks) {
    os << csv_field(r.suite) << ',' << csv_field(c.description) << ',' << csv_field(c.expected) << ','
       << csv_field(c.observed) << ',' << csv_field(c.tolerance) << ',' << (c.pass ? "pass" : "fail") << '\n';
  }
}

inline void write_report_text(std::ostream& os, const VerificationReport& r) {
  for (const auto& c : r.checks) {
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.description << ": observed " << c.observed << ", expected "
       << c.expected;
    if (!c.tolerance.empty()) os << " (tol " << c.tolerance << ")";
    os << '\n';
  }
  os << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << (r.checks.size() - r.failures()) << '/'
     << r.checks.size() << " checks)\n";
}

namespace detail {

inline std::string ratio_text(std::size_t good, std::size_t total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

// Reduced p/q of a decimal double such as 0.25.
inline std::pair<BigInt, BigInt> exact_ratio(double v) {
  DecimalValue d = parse_decimal(format_double(v));
  BigInt g = boost::multiprecision::gcd(d.numerator, d.denominator);
  return {d.numerator / g, d.denominator / g};
}

// Sign of lhs - c * N^(2 - alpha), all exact: with alpha = a/d, compare
// lhs^d against c^d N^(2d - a).
inline int compare_with_power(const BigInt& lhs, const std::pair<BigInt, BigInt>& c, std::uint64_t n, double alpha) {
  const auto [a, d] = exact_ratio(alpha);
  const unsigned dd = static_cast<unsigned>(d);
  const unsigned e = static_cast<unsigned>(2 * d - a);
  const BigInt left = pow_big(lhs, dd) * pow_big(c.second, dd);
  const BigInt right = pow_big(c.first, dd) * pow_big(BigInt(n), e);
  return left < right ? -1 : (left > right ? 1 : 0);
}

inline std::vector<std::uint64_t> golden_denominators(int h_lo, int h_hi) {
  const ContinuedFraction cf = golden_cf(static_cast<std::size_t>(h_hi) + 2);
  std::vector<std::uint64_t> out;
  for (int h = h_lo; h <= h_hi; ++h) out.push_back(static_cast<std::uint64_t>(cf.q(h)));
  return out;
}

}  // namespace detail

// ---- oracle: fast count against brute force ----

struct OracleConfig {
  std::size_t batches = 500;
  std::size_t max_n = 2000;
  std::uint64_t seed = 20240607;
};

template <PointWord W>
VerificationReport verify_oracle(const OracleConfig& cfg = {}) {
  VerificationReport rep{"oracle", {}};
  std::mt19937_64 rng(cfg.seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
  constexpr unsigned bits = word_bits<W>;

  std::size_t unit_ok = 0, unit_total = 0, grid_ok = 0, grid_total = 0;
  std::string first_mismatch;
  for (std::size_t b = 0; b < cfg.batches; ++b) {
    const std::size_t n = uniform(2, cfg.max_n);
    if (b % 5 == 4) {
      // exact vdc grid
      SequenceSpec spec;
      spec.kind = SequenceKind::vdc;
      spec.base = static_cast<std::uint32_t>(uniform(2, 10));
      spec.include_zero = uniform(0, 1) == 1;
      const RationalBatch r = std::get<RationalBatch>(generate<W>(spec, n).points);
      const u128 modulus = r.modulus();
      const auto m64 = static_cast<std::uint64_t>(modulus);
      const u128 thr = uniform(0, 3) == 0 ? static_cast<u128>(uniform(0, m64)) : static_cast<u128>(uniform(0, 4 * m64 / n + 1));
      const PairTally fast = pair_count_fast(r, thr);
      const PairTally naive = pair_count_naive(r, thr);
      ++grid_total;
      if (fast == naive) ++grid_ok;
      else if (first_mismatch.empty()) first_mismatch = "grid batch " + std::to_string(b);
      continue;
    }
    // mixture of families, with repeated points
    UnitBatch<W> pts;
    const ZSpec z = ZSpec::from_quotients({BigInt(uniform(1, 5)), BigInt(uniform(1, 5)), BigInt(uniform(1, 5)),
                                           BigInt(uniform(1, 5)), BigInt(uniform(1, 5)), BigInt(uniform(1, 50))});
    while (pts.size() < n) {
      const std::size_t chunk = std::min<std::size_t>(n - pts.size(), uniform(1, n));
      SequenceSpec spec;
      switch (uniform(0, 3)) {
        case 0: spec.kind = SequenceKind::iid; spec.seed = rng(); break;
        case 1: spec.kind = SequenceKind::vdc; spec.base = static_cast<std::uint32_t>(uniform(2, 7)); break;
        case 2: spec.kind = SequenceKind::kronecker; spec.z = uniform(0, 1) ? ZSpec::golden() : z; break;
        default: spec.kind = SequenceKind::sqrt_frac; break;
      }
      const UnitBatch<W> part = to_unit_batch(generate<W>(spec, chunk));
      pts.insert(pts.end(), part.begin(), part.end());
    }
    const std::size_t dups = uniform(0, 3) == 0 ? uniform(1, n / 2 + 1) : 0;
    for (std::size_t i = 0; i < dups && pts.size() > 1; ++i) pts[uniform(0, pts.size() - 1)] = pts[uniform(0, pts.size() - 1)];
    std::shuffle(pts.begin(), pts.end(), rng);

    W thr;
    switch (uniform(0, 4)) {
      case 0:  // an actual pair distance, a tie
        thr = circle_dist(pts[uniform(0, n - 1)], pts[uniform(0, n - 1)]).raw;
        break;
      case 1:  // anything, including past 1/2
        thr = static_cast<W>(static_cast<W>(rng()) << (bits - 64)) | static_cast<W>(rng());
        break;
      default: {  // a few mean spacings
        const W spacing = static_cast<W>((~W(0)) / n);
        thr = static_cast<W>(spacing / 16 * uniform(0, 64));
      }
    }
    const W guard = static_cast<W>(uniform(0, 8));
    const PairTally fast = pair_count_fast(pts, CircleDistance<W>{thr}, guard);
    const PairTally naive = pair_count_naive(pts, CircleDistance<W>{thr}, guard);
    ++unit_total;
    if (fast == naive) ++unit_ok;
    else if (first_mismatch.empty()) first_mismatch = "unit batch " + std::to_string(b);
  }
  rep.add("fixed-point batches: fast == naive (count and ambiguous tally)", detail::ratio_text(unit_total, unit_total),
          detail::ratio_text(unit_ok, unit_total), "exact", unit_ok == unit_total);
  rep.add("exact vdc grids: fast == naive", detail::ratio_text(grid_total, grid_total),
          detail::ratio_text(grid_ok, grid_total) + (first_mismatch.empty() ? "" : " first mismatch " + first_mismatch),
          "exact", grid_ok == grid_total);
  return rep;
}

// ---- thm6: van der Corput ----

struct Thm6Config {
  std::vector<std::uint32_t> bases{2, 3, 10};
  std::uint64_t n_min = 256;
  std::uint64_t n_max = 2000000;
  std::vector<double> alphas{0.25, 0.5, 0.75};
  std::vector<double> s_values{0.5, 1, 2};
  int witness_max_exponent = 20;  // base 2, alpha = 1, s = 1/2
};

template <PointWord W>
VerificationReport verify_thm6(const Thm6Config& cfg = {}) {
  VerificationReport rep{"thm6", {}};
  for (std::uint32_t b : cfg.bases) {
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = b; n <= cfg.n_max; n *= b)
      if (n >= cfg.n_min) ns.push_back(n);
    if (ns.empty()) continue;
    SequenceSpec spec;
    spec.kind = SequenceKind::vdc;
    spec.base = b;
    spec.include_zero = true;
    for (const ProfileRow& row : f_stat_profile<W>(spec, ns, cfg.alphas, cfg.s_values)) {
      const PairCountResult& r = row.result;
      // 2s N^(2-alpha) - 2N <= count <= 2s N^(2-alpha)
      auto two_s = detail::exact_ratio(2 * r.s);
      const BigInt count = r.ordered_pair_count;
      const bool upper = detail::compare_with_power(count, two_s, r.n, r.alpha) <= 0;
      const bool lower = detail::compare_with_power(count + 2 * BigInt(r.n), two_s, r.n, r.alpha) >= 0;
      rep.add("b=" + std::to_string(b) + " N=" + std::to_string(r.n) + " alpha=" + format_double(r.alpha) +
                  " s=" + format_double(r.s) + ": 2s - 2N^(alpha-1) <= F <= 2s",
              "[" + format_double(2 * r.s - 2 * std::pow(double(r.n), r.alpha - 1)) + ", " + format_double(2 * r.s) + "]",
              format_double(r.f) + " (count " + std::to_string(r.ordered_pair_count) + ")", "exact", upper && lower);
    }
  }
  if (cfg.witness_max_exponent > 0) {
    SequenceSpec spec;
    spec.kind = SequenceKind::vdc;
    spec.base = 2;
    std::vector<std::uint64_t> ns;
    for (int k = 1; k <= cfg.witness_max_exponent; ++k) ns.push_back(std::uint64_t(1) << k);
    std::size_t zero = 0;
    std::string worst;
    for (const ProfileRow& row : f_stat_profile<W>(spec, ns, {1.0}, {0.5})) {
      if (row.result.ordered_pair_count == 0) ++zero;
      else if (worst.empty()) worst = " (N=" + std::to_string(row.result.n) + " count " + std::to_string(row.result.ordered_pair_count) + ")";
    }
    rep.add("b=2, N=2^n for n=1.." + std::to_string(cfg.witness_max_exponent) + ", alpha=1, s=1/2: count = 0",
            detail::ratio_text(ns.size(), ns.size()), detail::ratio_text(zero, ns.size()) + worst, "exact",
            zero == ns.size());
  }
  return rep;
}

// ---- thm7: golden Kronecker ----

struct Thm7Config {
  std::uint64_t witness_max_n = 1400000;
  int h_early = 15;
  int h_late = 30;
  std::vector<double> alphas{0.3, 0.5, 0.7};
  std::vector<double> s_values{0.5, 1, 2};
  double tolerance = 0.05;  // relative |F - 2s| / 2s at h_late; observed worst 0.0142
  bool witness = true;
  bool convergence = true;
};

template <PointWord W>
VerificationReport verify_thm7(const Thm7Config& cfg = {}) {
  VerificationReport rep{"thm7", {}};
  SequenceSpec spec;
  spec.kind = SequenceKind::kronecker;
  spec.z = ZSpec::golden();

  if (cfg.witness) {
    std::vector<std::uint64_t> qs;
    for (std::uint64_t q : detail::golden_denominators(2, 60))
      if (q <= cfg.witness_max_n) qs.push_back(q);
    std::size_t zero = 0;
    std::string bad;
    for (const ProfileRow& row : f_stat_profile<W>(spec, qs, {1.0}, {0.5})) {
      if (row.result.ordered_pair_count == 0 && row.result.ambiguous_pairs == 0) ++zero;
      else if (bad.empty()) bad = " (N=" + std::to_string(row.result.n) + " count " + std::to_string(row.result.ordered_pair_count) + ")";
  }
  rep.add("F_{q_h}^1(1/2) = 0 for every q_h <= " + std::to_string(cfg.witness_max_n),
          detail::ratio_text(qs.size(), qs.size()), detail::ratio_text(zero, qs.size()) + bad, "exact", zero == qs.size());
  }
  if (!cfg.convergence) return rep;

  const auto q = detail::golden_denominators(cfg.h_early, cfg.h_late);
  const std::vector<std::uint64_t> ns{q.front(), q.back()};
  const auto rows = f_stat_profile<W>(spec, ns, cfg.alphas, cfg.s_values);
  const std::size_t cells = cfg.alphas.size() * cfg.s_values.size();
  std::uint64_t ambiguous = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    const PairCountResult& early = rows[i].result;
    const PairCountResult& late = rows[cells + i].result;
    ambiguous += early.ambiguous_pairs + late.ambiguous_pairs;
    const double e_early = early.abs_err_vs_2s() / (2 * early.s);
    const double e_late = late.abs_err_vs_2s() / (2 * late.s);
    const std::string cell = "alpha=" + format_double(late.alpha) + " s=" + format_double(late.s);
    rep.add(cell + ": relative error at h=" + std::to_string(cfg.h_late), "<= " + format_double(cfg.tolerance),
            format_double(e_late) + " (F=" + format_double(late.f) + ")", format_double(cfg.tolerance),
            e_late <= cfg.tolerance);
    rep.add(cell + ": error shrinks from h=" + std::to_string(cfg.h_early) + " to h=" + std::to_string(cfg.h_late),
            "< " + format_double(e_early), format_double(e_late), "", e_late < e_early);
  }
  rep.add("no pair within the guard band of any threshold", "0", std::to_string(ambiguous), "", ambiguous == 0);
  return rep;
}

// ---- lemma9: per-point counts ----

struct Lemma9Config {
  int h = 25;
  double alpha = 0.5;
  std::vector<double> s_values{0.5, 1, 2};
  std::size_t points = 20;
  std::uint64_t seed = 9;
};

template <PointWord W>
VerificationReport verify_lemma9(const Lemma9Config& cfg = {}) {
  VerificationReport rep{"lemma9", {}};
  const std::uint64_t n = detail::golden_denominators(cfg.h, cfg.h).front();
  const UnitBatch<W> orbit = golden_orbit_from_one<W>(n);
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> ls;
  for (std::size_t i = 0; i < cfg.points; ++i) ls.push_back(std::uniform_int_distribution<std::size_t>(1, n)(rng));
  for (double s : cfg.s_values) {
    std::size_t ok = 0;
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t l : ls) {
      const Lemma9Result r = lemma9_bounds_check(orbit, l, s, cfg.alpha);
      ok += r.within_bounds;
      lo = std::min(lo, r.normalized);
      hi = std::max(hi, r.normalized);
    }
    rep.add("N=q_" + std::to_string(cfg.h) + "=" + std::to_string(n) + " alpha=" + format_double(cfg.alpha) +
                " s=" + format_double(s) + ": normalized per-point count in (s/2, 4s)",
            "(" + format_double(s / 2) + ", " + format_double(4 * s) + ")",
            detail::ratio_text(ok, ls.size()) + " in range, min " + format_double(lo) + " max " + format_double(hi),
            "open interval", ok == ls.size());
  }
  return rep;
}

// ---- lemma10: large gaps in windows of the golden orbit ----

struct Lemma10Config {
  int h_min = 3;
  int h_max = 15;
  std::size_t random_k = 30;
  std::uint64_t seed = 10;
};

template <PointWord W>
VerificationReport verify_lemma10(const Lemma10Config& cfg = {}) {
  VerificationReport rep{"lemma10", {}};
  const ContinuedFraction golden = golden_cf(static_cast<std::size_t>(cfg.h_max) + 8);
  std::mt19937_64 rng(cfg.seed);
  std::size_t sturm_ok = 0, sturm_total = 0;
  for (int h = cfg.h_min; h <= cfg.h_max; ++h) {
    const auto n = static_cast<std::size_t>(golden.q(h));
    SequenceSpec spec;
    spec.kind = SequenceKind::kronecker;
    const GapLayout<W> layout(to_unit_batch(generate<W>(spec, n)));
    std::set<std::size_t> pure;
    for (int i = 1; i <= h - 1; ++i) pure.insert(static_cast<std::size_t>(golden.q(i)));
    std::vector<std::size_t> others;
    for (std::size_t k = 1; k < n; ++k)
      if (!pure.count(k)) others.push_back(k);
    std::shuffle(others.begin(), others.end(), rng);
    if (others.size() > cfg.random_k) others.resize(cfg.random_k);
    std::sort(others.begin(), others.end());

    const BigInt q_prev = golden.q(h - 1);
    auto run = [&](const std::vector<std::size_t>& ks, const std::string& label) {
      std::size_t ok = 0, total = 0;
      std::string example;
      for (std::size_t k : ks) {
        const BigInt g = expected_large_gaps(k, golden);
        // Sturmian bracket floor(k q_{h-1}/q_h) .. ceil(...)
        const BigInt lo = BigInt(k) * q_prev / n;
        const BigInt hi = (BigInt(k) * q_prev + n - 1) / n;
        for (std::size_t start = 0; start < n; ++start) {
          const IntervalComposition c = interval_composition(layout, start, k, golden);
          const BigInt large = c.large;
          ++total;
          if (large == g || large == g + 1) ++ok;
          else if (example.empty()) example = " e.g. k=" + std::to_string(k) + " n=" + std::to_string(start) + ": " + large.str() + " vs g=" + g.str();
          ++sturm_total;
          if (large >= lo && large <= hi) ++sturm_ok;
        }
      }
      if (ks.empty()) return;
      rep.add("N=q_" + std::to_string(h) + "=" + std::to_string(n) + ", " + label +
                  ": large gaps in J_k in {g, g+1}",
              detail::ratio_text(total, total), detail::ratio_text(ok, total) + example, "exact", ok == total);
    };
    run(std::vector<std::size_t>(pure.begin(), pure.end()), "k in {q_1..q_" + std::to_string(h - 1) + "}");
    run(others, std::to_string(others.size()) + " non-pure k");
  }
  rep.add("diagnostic: large gaps in J_k in {floor(k q_{h-1}/q_h), ceil(k q_{h-1}/q_h)}",
          detail::ratio_text(sturm_total, sturm_total), detail::ratio_text(sturm_ok, sturm_total), "exact",
          sturm_ok == sturm_total);
  return rep;
}

// ---- lemma11: Ostrowski digit ratio ----

struct Lemma11Config {
  std::size_t reps = 100;
  int lowest_min = 12;
  int top_max = 80;
  double tolerance = 1e-3;
  std::uint64_t seed = 11;
};

inline VerificationReport verify_lemma11(const Lemma11Config& cfg = {}) {
  VerificationReport rep{"lemma11", {}};
  const ContinuedFraction golden = golden_cf(static_cast<std::size_t>(cfg.top_max) + 4);
  const Fixed192& phi = golden_ratio();
  std::mt19937_64 rng(cfg.seed);
  std::size_t admissible = 0, roundtrip = 0, close = 0;
  double worst = 0;
  for (std::size_t t = 0; t < cfg.reps; ++t) {
    const int low = std::uniform_int_distribution<int>(cfg.lowest_min, cfg.top_max)(rng);
    const int top = std::uniform_int_distribution<int>(low, cfg.top_max)(rng);
    std::vector<BigInt> digits(static_cast<std::size_t>(top) + 1, BigInt(0)), places;
    digits[static_cast<std::size_t>(low)] = 1;
    for (int i = low + 2; i <= top; ++i)
      if (digits[static_cast<std::size_t>(i - 1)] == 0) digits[static_cast<std::size_t>(i)] = rng() & 1;
    for (int i = 0; i <= top; ++i) places.push_back(golden.place(i));
    while (digits.size() > 2 && digits.back() == 0) {
      digits.pop_back();
      places.pop_back();
    }
    const OstrowskiRep r(digits, places);
    admissible += is_admissible(r, golden);
    const OstrowskiRep greedy = ostrowski(r.value(), golden);
    bool same = greedy.top() == r.top();
    for (int i = 1; same && i <= r.top(); ++i) same = greedy.digit(i) == r.digit(i);
    roundtrip += same;
    const double err = (lemma11_ratio(r) - phi).abs().to_double();
    worst = std::max(worst, err);
    close += err < cfg.tolerance;
  }
  const std::string n = std::to_string(cfg.reps);
  rep.add("random representations are admissible", n + "/" + n, detail::ratio_text(admissible, cfg.reps), "",
          admissible == cfg.reps);
  rep.add("greedy expansion of the value recovers the digits", n + "/" + n, detail::ratio_text(roundtrip, cfg.reps), "",
          roundtrip == cfg.reps);
  rep.add("|sum b_i Q_i / sum b_i Q_{i-1} - phi|, lowest index >= " + std::to_string(cfg.lowest_min),
          "< " + format_double(cfg.tolerance), "max " + format_double(worst), format_double(cfg.tolerance),
          close == cfg.reps);
  return rep;
}

// ---- lemma12 ----

struct Lemma12Config {
  int h_min = 10;
  int h_max = 20;
  double tolerance = 1e-4;
};

inline VerificationReport verify_lemma12(const Lemma12Config& cfg = {}) {
  VerificationReport rep{"lemma12", {}};
  const ContinuedFraction golden = golden_cf(static_cast<std::size_t>(cfg.h_max) + 8);
  std::vector<double> dev;
  std::string trace;
  for (int h = cfg.h_min; h <= cfg.h_max; ++h) {
    const Fixed192 v = lemma12_value(h, golden);
    dev.push_back((v - Fixed192::from_int(1)).abs().to_double());
    if (!trace.empty()) trace += " ";
    trace += format_double(dev.back());
  }
  rep.add("|(1 + 1/phi^2) ||q_{h-1} phi|| q_h - 1| at h=" + std::to_string(cfg.h_max),
          "< " + format_double(cfg.tolerance), format_double(dev.back()), format_double(cfg.tolerance),
          dev.back() < cfg.tolerance);
  bool decreasing = true;
  for (std::size_t i = 1; i < dev.size(); ++i) decreasing = decreasing && dev[i] < dev[i - 1];
  rep.add("|value - 1| strictly decreasing over h=" + std::to_string(cfg.h_min) + ".." + std::to_string(cfg.h_max),
          "decreasing", trace, "", decreasing);
  return rep;
}

// ---- threegap ----

struct ThreeGapConfig {
  std::size_t random_cases = 200;
  std::size_t max_quotient = 5;
  std::size_t quotients = 40;
  std::uint64_t max_n = 100000;
  int golden_h_min = 10;
  int golden_h_max = 25;
  std::uint64_t seed = 8;
};

template <PointWord W>
bool census_matches(const GapCensus& c, const GapPrediction& p, std::string& why) {
  if (c.entries.size() > 3) {
    why = std::to_string(c.entries.size()) + " distinct lengths";
    return false;
  }
  for (const auto& e : c.entries) {
    if (!p.admits(e.length, 1)) {
      why = "length " + e.length.str() + " not in {L1, L2, L3}";
      return false;
    }
  }
  if (p.l3 != p.l1 + p.l2) {
    why = "predicted L3 != L1 + L2";
    return false;
  }
  if (c.entries.size() == 3 && c.entries[2].length != c.entries[0].length + c.entries[1].length) {
    why = "largest census length is not the sum of the other two";
    return false;
  }
  return true;
}

template <PointWord W>
VerificationReport verify_threegap(const ThreeGapConfig& cfg = {}) {
  VerificationReport rep{"threegap", {}};
  std::mt19937_64 rng(cfg.seed);
  auto check = [&](const ZSpec& z, std::uint64_t n, std::string& why) {
    SequenceSpec spec;
    spec.kind = SequenceKind::kronecker;
    spec.z = z;
    const GapCensus c = gap_census(to_unit_batch(generate<W>(spec, n)));
    const GapPrediction p = predict_gaps<W>(z, n);
    const bool ok = census_matches<W>(c, p, why);
    if (!ok) why = "z=" + z.text.substr(0, 24) + " N=" + std::to_string(n) + ": " + why;
    return ok;
  };

  std::size_t ok = 0;
  std::string first;
  for (std::size_t i = 0; i < cfg.random_cases; ++i) {
    std::vector<BigInt> a;
    for (std::size_t j = 0; j < cfg.quotients; ++j)
      a.emplace_back(std::uniform_int_distribution<std::uint64_t>(1, cfg.max_quotient)(rng));
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(2, cfg.max_n)(rng);
    std::string why;
    if (check(ZSpec::from_quotients(a), n, why)) ++ok;
    else if (first.empty()) first = " first failure " + why;
  }
  rep.add("random z (a_i <= " + std::to_string(cfg.max_quotient) + "), N <= " + std::to_string(cfg.max_n) +
              ": census within 1 ulp of {L1, L2, L3}, L3 = L1 + L2",
          detail::ratio_text(cfg.random_cases, cfg.random_cases), detail::ratio_text(ok, cfg.random_cases) + first,
          "1 ulp", ok == cfg.random_cases);

  const auto qs = detail::golden_denominators(cfg.golden_h_min, cfg.golden_h_max);
  ok = 0;
  first.clear();
  for (std::uint64_t n : qs) {
    std::string why;
    if (check(ZSpec::golden(), n, why)) ++ok;
    else if (first.empty()) first = " first failure " + why;
  }
  rep.add("golden orbit at N = q_" + std::to_string(cfg.golden_h_min) + "..q_" + std::to_string(cfg.golden_h_max),
          detail::ratio_text(qs.size(), qs.size()), detail::ratio_text(ok, qs.size()) + first, "1 ulp",
          ok == qs.size());
  return rep;
}

// ---- cor5: i.i.d. points ----

struct Cor5Config {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::uint64_t n = 100000;
  std::vector<double> alphas{0.5, 1};
  double s = 1;
  double tolerance = 0.05;  // relative, on the mean over seeds
};

template <PointWord W>
VerificationReport verify_cor5(const Cor5Config& cfg = {}) {
  VerificationReport rep{"cor5", {}};
  for (double alpha : cfg.alphas) {
    double sum = 0;
    for (std::uint64_t seed : cfg.seeds) {
      SequenceSpec spec;
      spec.kind = SequenceKind::iid;
      spec.seed = seed;
      sum += f_stat(generate<W>(spec, cfg.n), cfg.s, alpha).f;
    }
    const double mean = sum / static_cast<double>(cfg.seeds.size());
    const double rel = std::abs(mean - 2 * cfg.s) / (2 * cfg.s);
    rep.add("iid N=" + std::to_string(cfg.n) + " alpha=" + format_double(alpha) + " s=" + format_double(cfg.s) +
                ": mean F over " + std::to_string(cfg.seeds.size()) + " seeds",
            format_double(2 * cfg.s), format_double(mean) + " (relative error " + format_double(rel) + ")",
            format_double(cfg.tolerance), rel <= cfg.tolerance);
  }
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracle",  "thm6",    "thm7",    "lemma9", "lemma10",
                                              "lemma11", "lemma12", "threegap", "cor5"};
  return names;
}

template <PointWord W>
VerificationReport run_suite(const std::string& name) {
  if (name == "oracle") return verify_oracle<W>();
  if (name == "thm6") return verify_thm6<W>();
  if (name == "thm7") return verify_thm7<W>();
  if (name == "lemma9") return verify_lemma9<W>();
  if (name == "lemma10") return verify_lemma10<W>();
  if (name == "lemma11") return verify_lemma11();
  if (name == "lemma12") return verify_lemma12();
  if (name == "threegap") return verify_threegap<W>();
  if (name == "cor5") return verify_cor5<W>();
  throw UsageError("unknown suite: " + name);
}

}  // namespace paircorr
