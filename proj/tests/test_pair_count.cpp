#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "paircorr/pair_count.hpp"

using namespace paircorr;

namespace {

using W = std::uint64_t;

UnitBatch<W> points(std::initializer_list<const char*> xs) {
  UnitBatch<W> out;
  for (const char* x : xs) out.push_back(parse_unit<W>(x));
  return out;
}

CircleDistance<W> thr(const char* x) { return {parse_unit<W>(x).raw}; }

}  // namespace

TEST(PairCount, Examples) {
  EXPECT_EQ(pair_count_fast(points({"0", "0.5"}), thr("0.5")).ordered, 2u);
  EXPECT_EQ(pair_count_fast(points({"0", "0.5"}), thr("0.4")).ordered, 0u);
  EXPECT_EQ(pair_count_fast(points({"0", "0.25", "0.5", "0.75"}), thr("0.25")).ordered, 8u);
  EXPECT_EQ(pair_count_naive(points({"0", "0.25", "0.5", "0.75"}), thr("0.25")).ordered, 8u);
}

TEST(PairCount, EquispacedOnGrid) {
  // numerators i over 2^10, threshold j/N
  RationalBatch r;
  r.base = 2;
  r.exponent = 10;
  for (u128 i = 0; i < 1024; ++i) r.numerators.push_back(i);
  for (u128 j = 0; j < 20; ++j) EXPECT_EQ(pair_count_fast(r, j).ordered, 2u * 1024 * static_cast<std::uint64_t>(j));
}

TEST(PairCount, VdcGridHasNoCloserPairs) {
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  auto r = std::get<RationalBatch>(generate<W>(spec, 1024).points);
  EXPECT_EQ(pair_count_fast(r, 0).ordered, 0u);  // 2^-11 floors to 0 on the 2^10 grid
  EXPECT_EQ(min_pair_distance(r).numerator, 1u);
}

TEST(PairCount, FastMatchesNaiveRandom) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + rng() % 300;
    auto pts = iid_uniform<W>(n, rng());
    // cluster some points to create ties and near ties
    for (std::size_t i = 0; i < n / 4; ++i) pts[rng() % n] = {pts[rng() % n].raw + rng() % 5};
    const W t1 = static_cast<W>(rng() >> (rng() % 64));
    const W guard = rng() % 6;
    EXPECT_EQ(pair_count_fast(pts, CircleDistance<W>{t1}, guard), pair_count_naive(pts, CircleDistance<W>{t1}, guard));
  }
}

TEST(PairCount, FastMatchesNaiveWide) {
  std::mt19937_64 rng(78);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 200;
    auto pts = iid_uniform<u128>(n, rng());
    const u128 t1 = ((static_cast<u128>(rng()) << 64) | rng()) >> (rng() % 128);
    EXPECT_EQ(pair_count_fast(pts, CircleDistance<u128>{t1}, u128(3)), pair_count_naive(pts, CircleDistance<u128>{t1}, u128(3)));
  }
}

TEST(PairCount, InvariantUnderPermutationAndRotation) {
  auto pts = iid_uniform<W>(500, 3);
  const CircleDistance<W> t{W(1) << 55};
  const auto base = pair_count_fast(pts, t).ordered;
  std::mt19937_64 rng(4);
  std::shuffle(pts.begin(), pts.end(), rng);
  EXPECT_EQ(pair_count_fast(pts, t).ordered, base);
  for (W shift : {W(1), W(1) << 63, W(0xdeadbeefcafef00dull)}) {
    auto moved = pts;
    for (auto& p : moved) p.raw += shift;
    EXPECT_EQ(pair_count_fast(moved, t).ordered, base);
  }
}

TEST(PairCount, MonotoneEvenBounded) {
  auto pts = iid_uniform<W>(400, 9);
  std::uint64_t prev = 0;
  for (int k = 40; k <= 64; ++k) {
    const W t = k == 64 ? CircleDistance<W>::half : W(1) << k;
    const auto c = pair_count_fast(pts, CircleDistance<W>{t}).ordered;
    EXPECT_GE(c, prev);
    EXPECT_EQ(c % 2, 0u);
    EXPECT_LE(c, 400u * 399u);
    prev = c;
  }
  EXPECT_EQ(prev, 400u * 399u);
}

TEST(PairCount, NeighborCountsSumToOrdered) {
  auto pts = iid_uniform<W>(3000, 10);
  SortedCircle<W> sc(raw_words(pts));
  const W t = W(1) << 54;
  const auto nb = sc.neighbor_counts(t);
  std::uint64_t sum = 0;
  for (auto c : nb) sum += c;
  EXPECT_EQ(sum, sc.ordered_within(t));
}

TEST(FStat, GoldenAtFibonacciIsZero) {
  SequenceSpec spec;
  auto r = f_stat(generate<W>(spec, 987), 0.5, 1.0);
  EXPECT_EQ(r.ordered_pair_count, 0u);
  EXPECT_EQ(r.f, 0.0);
}

TEST(FStat, VdcWithinProofBound) {
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  auto r = f_stat(generate<W>(spec, 1024), 1.0, 0.5);
  EXPECT_GE(r.f, 2 - 2.0 / 32);
  EXPECT_LE(r.f, 2.0);
}

TEST(FStat, IidNearTwoS) {
  SequenceSpec spec;
  spec.kind = SequenceKind::iid;
  spec.seed = 2024;
  EXPECT_NEAR(f_stat(generate<W>(spec, 100000), 1.0, 1.0).f, 2.0, 0.1);
  EXPECT_NEAR(f_stat(generate<W>(spec, 10000), 1.0, 0.8).f, 2.0, 0.15);
}

TEST(FStat, DegenerateCountsEveryPair) {
  auto r = f_stat(iid_uniform<W>(10, 1), 5.0, 0.5);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.ordered_pair_count, 90u);
}

TEST(FStat, RejectsBadArguments) {
  auto pts = iid_uniform<W>(10, 1);
  EXPECT_THROW(f_stat(pts, 1.0, 0.0), UsageError);
  EXPECT_THROW(f_stat(pts, 1.0, 1.5), UsageError);
  EXPECT_THROW(f_stat(pts, -1.0, 0.5), UsageError);
  EXPECT_THROW(f_stat(iid_uniform<W>(1, 1), 1.0, 0.5), UsageError);
}

TEST(Profile, SingleCellMatchesFStat) {
  SequenceSpec spec;
  spec.kind = SequenceKind::iid;
  spec.seed = 5;
  auto rows = f_stat_profile<W>(spec, {5000}, {0.7}, {1.5});
  ASSERT_EQ(rows.size(), 1u);
  auto direct = f_stat(generate<W>(spec, 5000), 1.5, 0.7);
  EXPECT_EQ(rows[0].result.ordered_pair_count, direct.ordered_pair_count);
  EXPECT_EQ(rows[0].result.f, direct.f);
}

TEST(Profile, OrderIsLexicographic) {
  SequenceSpec spec;
  auto rows = f_stat_profile<W>(spec, {89, 144}, {1.0, 0.5}, {2.0, 0.5});
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].result.n, 89u);
  EXPECT_EQ(rows[0].result.alpha, 0.5);
  EXPECT_EQ(rows[0].result.s, 0.5);
  EXPECT_EQ(rows[1].result.s, 2.0);
  EXPECT_EQ(rows[2].result.alpha, 1.0);
  EXPECT_EQ(rows[4].result.n, 144u);
}

TEST(Profile, VdcDyadicPrefixIsFullGrid) {
  // N = 2^k points are j/N, so the count is N * 2 * floor(s N^(1 - alpha))
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  std::vector<std::uint64_t> ns;
  for (int k = 10; k <= 20; ++k) ns.push_back(std::uint64_t(1) << k);
  auto rows = f_stat_profile<W>(spec, ns, {0.5}, {1.0});
  for (const auto& row : rows) {
    const auto n = row.result.n;
    const auto reach = static_cast<std::uint64_t>(std::floor(std::sqrt(double(n)) + 1e-9));
    EXPECT_EQ(row.result.ordered_pair_count, n * 2 * reach) << n;
    EXPECT_LE(row.result.abs_err_vs_2s(), 2.0 / std::sqrt(double(n)));
  }
}

TEST(Profile, RejectsCapAndOrder) {
  SequenceSpec spec;
  ProfileOptions opt;
  opt.max_points = 100;
  EXPECT_THROW(f_stat_profile<W>(spec, {1000}, {1.0}, {1.0}, opt), UsageError);
  EXPECT_THROW(f_stat_profile<W>(spec, {50, 20}, {1.0}, {1.0}), UsageError);
  EXPECT_THROW(f_stat_profile<W>(spec, {}, {1.0}, {1.0}), UsageError);
}

TEST(Rescaling, IdentityHolds) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    auto pts = iid_uniform<W>(2 + rng() % 1000, rng());
    const double a2 = 0.1 + 0.9 * std::uniform_real_distribution<double>()(rng);
    const double a1 = a2 + (1 - a2) * std::uniform_real_distribution<double>()(rng);
    const double s = 0.1 + 4 * std::uniform_real_distribution<double>()(rng);
    EXPECT_TRUE(rescaling_identity_check(pts, s, a1, a2));
    EXPECT_TRUE(rescaling_identity_check(pts, s, a1, a1));
  }
}

TEST(MinDistance, Examples) {
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  auto eight = to_unit_batch(generate<W>(spec, 8));
  EXPECT_EQ(min_pair_distance(eight).raw, W(1) << 61);
  EXPECT_EQ(min_pair_distance(points({"0.3", "0.3"})).raw, 0u);
}

TEST(MinDistance, GoldenIsConvergentError) {
  // N = q_15 = 987: minimal gap ||q_14 phi||, above 1/(2 q_15)
  auto pts = to_unit_batch(generate<W>(SequenceSpec{}, 987));
  const double d = min_pair_distance(pts).to_double();
  EXPECT_NEAR(d, 0.0007331374358574064, 1e-15);
  EXPECT_GT(d, 1.0 / (2 * 987));
}
