#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "lsi/errors.hpp"
#include "lsi/pgm.hpp"
#include "support/oracles.hpp"

namespace lsi {
namespace {

TEST(BuildPgm, DenseKeysNeedOneSegment) {
  std::vector<Key> keys(100);
  std::iota(keys.begin(), keys.end(), Key{0});
  const auto m = build_pgm(SortedTable(keys), 4);
  EXPECT_EQ(m.height(), 1u);
  EXPECT_EQ(m.levels[0].size(), 1u);
  EXPECT_EQ(pgm_predict(m, 50), (SearchRange{46, 55}));
}

TEST(BuildPgm, Errors) {
  EXPECT_THROW(build_pgm(SortedTable({1, 2}), 0), ConfigError);
  EXPECT_THROW(build_pgm(SortedTable(), 8), TrainingError);
}

TEST(SegmentPoints, KinkSplitsIntoTwoSegments) {
  std::vector<Key> keys;
  for (Key k = 0; k < 50; ++k) keys.push_back(k);
  for (Key k = 0; k < 50; ++k) keys.push_back(1000 + 100 * k);
  const auto segs = segment_points(keys, 2);
  ASSERT_GE(segs.size(), 2u);
  EXPECT_EQ(segs[0].first_key, 0u);
  EXPECT_EQ(segs[0].intercept, 0.0);
}

// Each segment must predict every point it covers within eps.
TEST(PgmProperty, SegmentsHonourEps) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const SortedTable t(testing::random_keys(1 + rng() % 3000, static_cast<testing::KeyShape>(trial % 4), rng));
    const std::uint64_t eps = 1 + rng() % 64;
    const auto segs = segment_points(t.keys(), eps);
    ASSERT_EQ(segs.front().first_key, t.min_key());
    std::size_t s = 0;
    for (Rank r = 0; r < t.size(); ++r) {
      while (s + 1 < segs.size() && segs[s + 1].first_key <= t[r]) ++s;
      ASSERT_LE(std::fabs(segs[s].evaluate(t[r]) - static_cast<double>(r)), static_cast<double>(eps) + 1e-6);
    }
  }
}

TEST(PgmProperty, MembersContainedWidthBoundedAbsentEdgesSound) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 80; ++trial) {
    const SortedTable t(testing::random_keys(1 + rng() % 4000, static_cast<testing::KeyShape>(trial % 4), rng));
    const std::uint64_t eps = std::uint64_t{1} << (rng() % 8);
    const auto m = build_pgm(t, eps);
    ASSERT_EQ(m.levels.back().size(), 1u);
    for (Rank r = 0; r < t.size(); ++r) {
      ASSERT_EQ(m.bottom_segment(t[r]), [&] {
        const auto& b = m.levels.front();
        std::size_t s = 0;
        while (s + 1 < b.size() && b[s + 1].first_key <= t[r]) ++s;
        return s;
      }());
      const auto iv = pgm_predict(m, t[r]);
      ASSERT_LE(iv.lo, r);
      ASSERT_LT(r, iv.hi);
      ASSERT_LE(iv.size(), 2 * eps + 1);
    }
    for (Key q : testing::all_query_classes(t.keys(), 30, rng)) ASSERT_LE(pgm_predict(m, q).size(), 2 * eps + 1);
  }
}

}  // namespace
}  // namespace lsi
