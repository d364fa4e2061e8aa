#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "paircorr/sequences.hpp"

using namespace paircorr;

namespace {


std::uint64_t raw_of(const char* decimal) { return parse_unit<std::uint64_t>(decimal).raw; }

std::uint64_t ulp_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

TEST(Vdc, Examples) {
  EXPECT_EQ(vdc(1, 2), (RationalPoint{1, 2, 1}));
  EXPECT_EQ(vdc(0, 7).numerator, 0u);
  EXPECT_EQ(vdc(6, 2), (RationalPoint{3, 2, 3}));
  EXPECT_EQ(vdc(5, 10), (RationalPoint{5, 10, 1}));
  EXPECT_EQ(vdc(12, 10), (RationalPoint{21, 10, 2}));
}

TEST(Vdc, DenominatorIsDigitCount) {
  for (std::uint64_t n = 1; n < 500; ++n)
    for (std::uint32_t b : {2u, 3u, 7u}) EXPECT_EQ(vdc(n, b).exponent, digit_count(n, b));
}

TEST(Vdc, FullGridMultiset) {
  for (std::uint32_t b : {2u, 3u, 5u, 10u}) {
    for (std::uint32_t k = 1; k <= 5; ++k) {
      const auto m = static_cast<std::uint64_t>(RationalPoint::checked_power(b, k));
      std::vector<std::uint64_t> nums;
      for (std::uint64_t n = 0; n < m; ++n) nums.push_back(static_cast<std::uint64_t>(vdc(n, b).rescaled(k).numerator));
      std::sort(nums.begin(), nums.end());
      for (std::uint64_t i = 0; i < m; ++i) ASSERT_EQ(nums[i], i);
    }
  }
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker<std::uint64_t>(0, ZSpec::golden()).raw, 0u);
  EXPECT_EQ(kronecker<std::uint64_t>(3, ZSpec::rational(1, 4)).raw, raw_of("0.75"));
  EXPECT_LE(ulp_diff(kronecker<std::uint64_t>(2, ZSpec::golden()).raw, raw_of("0.2360679774997896964091737")), 2u);
}

TEST(Kronecker, Homomorphism) {
  const ZSpec z = ZSpec::golden();
  for (std::uint64_t n : {0ull, 1ull, 17ull, 1000003ull})
    for (std::uint64_t m : {0ull, 5ull, 987ull, 99991ull})
      EXPECT_EQ(kronecker<std::uint64_t>(n + m, z), kronecker<std::uint64_t>(n, z) + kronecker<std::uint64_t>(m, z));
}

TEST(Kronecker, GoldenWordIsRoundedLiteral) {
  EXPECT_LE(ulp_diff(rotation_word<std::uint64_t>(ZSpec::golden()), raw_of("0.6180339887498948482045868")), 1u);
  EXPECT_EQ(rotation_word<std::uint64_t>(ZSpec::golden()), 11400714819323198486ull);
}

TEST(ZSpecParse, Forms) {
  EXPECT_EQ(ZSpec::parse("phi").kind, ZSpec::Kind::golden);
  auto q = ZSpec::parse("cf:2,2,2");
  EXPECT_EQ(q.numerator, 5);  // [0; 2, 2, 2] = 5/12
  EXPECT_EQ(q.denominator, 12);
  auto r = ZSpec::parse("3/7");
  EXPECT_EQ(r.kind, ZSpec::Kind::rational);
  EXPECT_THROW(ZSpec::parse("cf:1,0"), UsageError);
}

TEST(ZSpecParse, ShortDecimalRejected) {
  EXPECT_THROW(rotation_word<std::uint64_t>(ZSpec::parse("0.4142")), UsageError);
  EXPECT_NO_THROW(rotation_word<std::uint64_t>(ZSpec::parse("0.375")));
  EXPECT_NO_THROW(rotation_word<std::uint64_t>(ZSpec::parse("0.41421356237309504880168872420969807857")));
}

TEST(SqrtFrac, Examples) {
  EXPECT_EQ(sqrt_frac<std::uint64_t>(4).raw, 0u);
  EXPECT_LE(ulp_diff(sqrt_frac<std::uint64_t>(2).raw, raw_of("0.4142135623730950488016887")), 1u);
  EXPECT_LE(ulp_diff(sqrt_frac<std::uint64_t>(5).raw, raw_of("0.2360679774997896964091737")), 1u);
  for (std::uint64_t n = 1; n < 3000; ++n) ASSERT_EQ(sqrt_frac<std::uint64_t>(n * n).raw, 0u);
}

TEST(Iid, DeterministicAndEmpty) {
  EXPECT_TRUE(iid_uniform<std::uint64_t>(0, 1).empty());
  EXPECT_EQ(iid_uniform<std::uint64_t>(100, 42), iid_uniform<std::uint64_t>(100, 42));
  EXPECT_NE(iid_uniform<std::uint64_t>(100, 42), iid_uniform<std::uint64_t>(100, 43));
  EXPECT_EQ(iid_uniform<u128>(5, 1), iid_uniform<u128>(5, 1));
}

TEST(Iid, MeanNearHalf) {
  const auto pts = iid_uniform<std::uint64_t>(1000000, 7);
  double sum = 0;
  for (const auto& p : pts) sum += p.to_double();
  EXPECT_NEAR(sum / pts.size(), 0.5, 0.002);
}

TEST(Generate, VdcFirstEightIsGrid) {
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  auto batch = generate<std::uint64_t>(spec, 8);
  ASSERT_TRUE(batch.is_exact());
  const auto& r = std::get<RationalBatch>(batch.points);
  EXPECT_EQ(r.exponent, 3u);
  std::set<std::uint64_t> got;
  for (u128 v : r.numerators) got.insert(static_cast<std::uint64_t>(v));
  EXPECT_EQ(got, (std::set<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(Generate, VdcWithoutZeroStartsAtOne) {
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  spec.include_zero = false;
  auto r = std::get<RationalBatch>(generate<std::uint64_t>(spec, 3).points);
  EXPECT_EQ(r.exponent, 2u);
  EXPECT_EQ(r.numerators, (std::vector<u128>{2, 1, 3}));
}

TEST(Generate, RejectsBadInput) {
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  spec.base = 1;
  EXPECT_THROW(generate<std::uint64_t>(spec, 5), UsageError);
  EXPECT_THROW(generate<std::uint64_t>(SequenceSpec{}, 0), UsageError);
}

TEST(Generate, GoldenFirstThree) {
  SequenceSpec spec;
  auto u = to_unit_batch(generate<std::uint64_t>(spec, 3));
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u[0].raw, 0u);
  EXPECT_NEAR(u[1].to_double(), 0.6180339887498948, 1e-15);
  EXPECT_NEAR(u[2].to_double(), 0.2360679774997897, 1e-15);
}

TEST(Generate, PrefixKeepsGrid) {
  SequenceSpec spec;
  spec.kind = SequenceKind::vdc;
  spec.base = 3;
  auto b = generate<std::uint64_t>(spec, 30);
  auto p = prefix(b, 9);
  EXPECT_EQ(p.size(), 9u);
  EXPECT_EQ(std::get<RationalBatch>(p.points).exponent, std::get<RationalBatch>(b.points).exponent);
}

TEST(SequenceKindNames, RoundTrip) {
  for (auto k : {SequenceKind::vdc, SequenceKind::kronecker, SequenceKind::sqrt_frac, SequenceKind::iid})
    EXPECT_EQ(parse_sequence_kind(to_string(k)), k);
  EXPECT_THROW(parse_sequence_kind("halton"), UsageError);
}
