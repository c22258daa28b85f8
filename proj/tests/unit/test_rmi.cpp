#include <gtest/gtest.h>

#include <random>

#include "lsi/errors.hpp"
#include "lsi/rmi.hpp"
#include "support/oracles.hpp"

namespace lsi {
namespace {

TEST(BuildRmi, LeafSpansPartitionTheTable) {
  std::vector<Key> keys;
  for (Key k = 0; k < 1000; ++k) keys.push_back(k * k);
  const SortedTable t(keys);
  const auto m = build_rmi(t, 16);
  ASSERT_EQ(m.leaves.size(), 16u);
  ASSERT_EQ(m.leaf_begin.size(), 17u);
  EXPECT_EQ(m.leaf_begin.front(), 0u);
  EXPECT_EQ(m.leaf_begin.back(), 1000u);
  for (std::size_t i = 0; i + 1 < m.leaf_begin.size(); ++i) EXPECT_LE(m.leaf_begin[i], m.leaf_begin[i + 1]);
  for (std::size_t leaf = 0; leaf < 16; ++leaf) {
    for (Rank r = m.leaf_begin[leaf]; r < m.leaf_begin[leaf + 1]; ++r) EXPECT_EQ(m.leaf_for(t[r]), leaf);
  }
}

TEST(BuildRmi, SingleLeafIsExactOnLinearData) {
  std::vector<Key> keys;
  for (Key k = 0; k < 100; ++k) keys.push_back(7 * k + 3);
  const auto m = build_rmi(SortedTable(keys), 1);
  EXPECT_EQ(m.err_lo[0], 0u);
  EXPECT_EQ(m.err_hi[0], 0u);
  EXPECT_EQ(rmi_predict(m, 7 * 40 + 3), (SearchRange{40, 41}));
}

TEST(BuildRmi, Errors) {
  EXPECT_THROW(build_rmi(SortedTable({1, 2, 3}), 0), ConfigError);
  EXPECT_THROW(build_rmi(SortedTable(), 4), TrainingError);
}

TEST(BuildRmi, MoreLeavesThanKeys) {
  const SortedTable t({3, 9, 27});
  const auto m = build_rmi(t, 64);
  for (Rank r = 0; r < 3; ++r) {
    const auto iv = rmi_predict(m, t[r]);
    EXPECT_LE(iv.lo, r);
    EXPECT_LT(r, iv.hi);
  }
}

TEST(RmiProperty, MembersAreContainedAndErrorsAreTight) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const SortedTable t(testing::random_keys(1 + rng() % 3000, static_cast<testing::KeyShape>(trial % 4), rng));
    const std::size_t b = std::size_t{1} << (rng() % 10);
    const auto m = build_rmi(t, b);
    std::vector<std::uint64_t> seen_lo(b, 0), seen_hi(b, 0);
    for (Rank r = 0; r < t.size(); ++r) {
      const auto iv = rmi_predict(m, t[r]);
      ASSERT_LE(iv.lo, r);
      ASSERT_LT(r, iv.hi);
      const std::size_t leaf = m.leaf_for(t[r]);
      const auto pred = m.leaf_prediction(leaf, t[r]);
      const auto diff = pred - static_cast<std::int64_t>(r);
      if (diff > 0) seen_lo[leaf] = std::max<std::uint64_t>(seen_lo[leaf], diff);
      if (diff < 0) seen_hi[leaf] = std::max<std::uint64_t>(seen_hi[leaf], -diff);
    }
    ASSERT_EQ(seen_lo, m.err_lo);
    ASSERT_EQ(seen_hi, m.err_hi);
  }
}

}  // namespace
}  // namespace lsi
