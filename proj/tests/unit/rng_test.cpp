#include "nfl/rng.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <set>

namespace nfl {
namespace {

using Block = std::array<std::uint32_t, 4>;

TEST(PhiloxTest, KnownAnswerVectors) {
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStreamTest, SameKeyReproduces) {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStreamTest, DistinctKeysDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint64_t s = 0; s < 20; ++s) {
    for (std::uint64_t i = 0; i < 20; ++i) first.insert(RngStream(s, i).next_u64());
  }
  EXPECT_EQ(first.size(), 400u);
}

TEST(RngStreamTest, SubstreamsAreIndependentOfParentState) {
  RngStream parent(3, 4);
  const RngStream child_before = parent.substream(2);
  parent.next_u64();
  RngStream c1 = child_before;
  RngStream c2 = parent.substream(2);
  EXPECT_EQ(c1.next_u64(), c2.next_u64());
  EXPECT_NE(parent.substream(1).next_u64(), parent.substream(2).next_u64());
}

TEST(RngStreamTest, UniformIsOpenAndMomentsMatch) {
  RngStream rng(1, 0);
  const int n = 200000;
  double sum = 0;
  double sumsq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sumsq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sumsq / n - 0.25, 1.0 / 12, 2e-3);
}

TEST(RngStreamTest, NormalMomentsMatch) {
  RngStream rng(2, 0);
  const int n = 200000;
  double sum = 0;
  double sumsq = 0;
  double fourth = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
    fourth += z * z * z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 5 / std::sqrt(n));
  EXPECT_NEAR(sumsq / n, 1.0, 5 * std::sqrt(2.0 / n));
  EXPECT_NEAR(fourth / n, 3.0, 0.1);
}

TEST(RngStreamTest, SignIsBalanced) {
  RngStream rng(9, 0);
  int total = 0;
  for (int i = 0; i < 100000; ++i) {
    const int s = rng.sign();
    ASSERT_TRUE(s == 1 || s == -1);
    total += s;
  }
  EXPECT_LT(std::abs(total), 5 * 316);
}

}  // namespace
}  // namespace nfl
