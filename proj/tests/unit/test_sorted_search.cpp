#include <gtest/gtest.h>

#include <random>

#include "lsi/errors.hpp"
#include "lsi/sorted_search.hpp"
#include "support/oracles.hpp"

namespace lsi {
namespace {

const SortedTable& small_table() {
  static const SortedTable table({47, 105, 140, 289, 316, 358, 386, 398, 819, 939});
  return table;
}

TEST(SortedTable, RejectsDuplicatesAndDisorder) {
  EXPECT_THROW(SortedTable({5, 5}), UsageError);
  EXPECT_THROW(SortedTable({7, 3}), UsageError);
  EXPECT_NO_THROW(SortedTable(std::vector<Key>{}));
  EXPECT_NO_THROW(SortedTable({1}));
}

TEST(StandardBinarySearch, Examples) {
  const auto& t = small_table();
  EXPECT_EQ(standard_binary_search(t, 316, t.full_range()), 4u);
  EXPECT_EQ(standard_binary_search(t, 1, t.full_range()), 0u);
  EXPECT_EQ(standard_binary_search(t, 1000, t.full_range()), 10u);
  EXPECT_EQ(standard_binary_search(t, 300, t.full_range(), Prefetch::on), 4u);
}

TEST(UniformBinarySearch, Examples) {
  const auto& t = small_table();
  EXPECT_EQ(uniform_binary_search(t, 398, t.full_range()), 7u);
  EXPECT_EQ(uniform_binary_search(t, 47, t.full_range()), 0u);
  EXPECT_EQ(uniform_binary_search(t, 47, t.full_range(), Prefetch::on), 0u);
}

TEST(BranchyLowerBound, Examples) {
  const auto& t = small_table();
  EXPECT_EQ(branchy_lower_bound(t, 819, t.full_range()), 8u);
  EXPECT_EQ(branchy_lower_bound(t, 820, t.full_range()), 9u);
  EXPECT_EQ(branchy_lower_bound(t, 12345, {3, 3}), 3u);
  EXPECT_EQ(branchy_lower_bound(t, 0, {3, 3}), 3u);
}

TEST(StandardKarySearch, Examples) {
  const auto& t = small_table();
  EXPECT_EQ(standard_kary_search(t, 398, t.full_range(), 3), 7u);
  EXPECT_EQ(standard_kary_search(t, 939, t.full_range(), 3), 9u);
  EXPECT_EQ(standard_kary_search(t, 46, t.full_range(), 4), 0u);
  EXPECT_EQ(standard_kary_search(t, 940, t.full_range(), 3), 10u);
}

TEST(UniformKarySearch, Examples) {
  const auto& t = small_table();
  EXPECT_EQ(uniform_kary_search(t, 140, t.full_range(), 3), 2u);
  EXPECT_EQ(uniform_kary_search(t, 358, {5, 6}, 3), 5u);
  EXPECT_EQ(uniform_kary_search(t, 940, t.full_range(), 5), 10u);
}

TEST(OracleLowerBound, Examples) {
  const auto& t = small_table();
  EXPECT_EQ(oracle_lower_bound(t, 316, t.full_range()), 4u);
  EXPECT_EQ(oracle_lower_bound(t, 317, t.full_range()), 5u);
  const SortedTable single({5});
  EXPECT_EQ(oracle_lower_bound(single, 5, single.full_range()), 0u);
}

TEST(SortedSearch, InvalidRangeIsUsageError) {
  const auto& t = small_table();
  EXPECT_THROW(standard_binary_search(t, 1, {4, 3}), UsageError);
  EXPECT_THROW(uniform_binary_search(t, 1, {0, 11}), UsageError);
  EXPECT_THROW(branchy_lower_bound(t, 1, {11, 11}), UsageError);
  EXPECT_THROW(standard_kary_search(t, 1, {2, 1}), UsageError);
  EXPECT_THROW(uniform_kary_search(t, 1, {0, 12}), UsageError);
  EXPECT_THROW(oracle_lower_bound(t, 1, {5, 4}), UsageError);
}

TEST(SortedSearch, KaryOutOfBoundsKIsConfigError) {
  const auto& t = small_table();
  EXPECT_THROW(standard_kary_search(t, 1, t.full_range(), 1), ConfigError);
  EXPECT_THROW(uniform_kary_search(t, 1, t.full_range(), 0), ConfigError);
  EXPECT_THROW(uniform_kary_search(t, 1, t.full_range(), 17), ConfigError);
  EXPECT_NO_THROW(uniform_kary_search(t, 1, t.full_range(), 16));
}

TEST(SortedSearch, EmptyRangeReturnsHi) {
  const auto& t = small_table();
  for (Rank r = 0; r <= t.size(); ++r) {
    EXPECT_EQ(standard_binary_search(t, 300, {r, r}), r);
    EXPECT_EQ(uniform_binary_search(t, 300, {r, r}, Prefetch::on), r);
    EXPECT_EQ(standard_kary_search(t, 300, {r, r}), r);
    EXPECT_EQ(uniform_kary_search(t, 300, {r, r}), r);
  }
  const SortedTable empty;
  EXPECT_EQ(uniform_binary_search(empty, 3, empty.full_range()), 0u);
}

TEST(SortedSearch, GenericDispatchRejectsEytzinger) {
  const auto& t = small_table();
  EXPECT_EQ(search(Routine::uniform_kary, t, 398, t.full_range()), 7u);
  EXPECT_THROW(search(Routine::eytzinger, t, 398, t.full_range()), UsageError);
}

TEST(SortedSearch, RoutineNamesRoundTrip) {
  for (auto r : {Routine::standard_bs, Routine::uniform_bs, Routine::lower_bound, Routine::standard_kary,
                 Routine::uniform_kary, Routine::eytzinger}) {
    EXPECT_EQ(parse_routine(routine_name(r)), r);
  }
  EXPECT_FALSE(parse_routine("bogus").has_value());
}

TEST(SortedSearch, Predecessor) {
  const auto& t = small_table();
  EXPECT_FALSE(predecessor(t, 46).has_value());
  EXPECT_EQ(predecessor(t, 47), 0u);
  EXPECT_EQ(predecessor(t, 300), 3u);
  EXPECT_EQ(predecessor(t, 316), 4u);
  EXPECT_EQ(predecessor(t, 5000), 9u);
}

// Every routine, both prefetch modes, random subranges, against a scan.
TEST(SortedSearchProperty, OracleEquivalenceAndRangeSoundness) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 600;
    const auto shape = static_cast<testing::KeyShape>(trial % 4);
    const SortedTable t(testing::random_keys(n, shape, rng));
    const auto queries = testing::all_query_classes(t.keys(), 12, rng);
    for (Key q : queries) {
      Rank lo = rng() % (n + 1);
      Rank hi = rng() % (n + 1);
      if (lo > hi) std::swap(lo, hi);
      for (SearchRange range : {t.full_range(), SearchRange{lo, hi}}) {
        const Rank expect = testing::scan_lower_bound(t.keys(), q, range.lo, range.hi);
        for (auto pf : {Prefetch::off, Prefetch::on}) {
          ASSERT_EQ(standard_binary_search(t, q, range, pf), expect);
          ASSERT_EQ(uniform_binary_search(t, q, range, pf), expect);
          for (unsigned k : {2u, 3u, 4u, 7u, 16u}) {
            ASSERT_EQ(standard_kary_search(t, q, range, k, pf), expect) << "k=" << k;
            ASSERT_EQ(uniform_kary_search(t, q, range, k, pf), expect) << "k=" << k;
          }
        }
        ASSERT_EQ(branchy_lower_bound(t, q, range), expect);
        ASSERT_EQ(oracle_lower_bound(t, q, range), expect);
      }
      // Range restriction: a full-table answer inside [lo, hi) is found; beyond hi gives hi.
      const Rank global = testing::scan_lower_bound(t.keys(), q);
      if (global >= lo && global < hi) ASSERT_EQ(uniform_binary_search(t, q, {lo, hi}), global);
      if (global >= hi) ASSERT_EQ(standard_binary_search(t, q, {lo, hi}), hi);
    }
  }
}

TEST(SortedSearchProperty, BinaryKaryDegeneratesToUniformBinary) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const SortedTable t(testing::random_keys(1 + rng() % 300, testing::KeyShape::sparse_small, rng));
    for (Key q : testing::all_query_classes(t.keys(), 20, rng)) {
      const Rank u = uniform_binary_search(t, q, t.full_range());
      ASSERT_EQ(standard_kary_search(t, q, t.full_range(), 2), u);
      ASSERT_EQ(uniform_kary_search(t, q, t.full_range(), 2), u);
    }
  }
}

}  // namespace
}  // namespace lsi
