#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "lsi/errors.hpp"
#include "lsi/eytzinger.hpp"
#include "support/oracles.hpp"

namespace lsi {
namespace {

SortedTable iota_table(Key first, std::size_t n) {
  std::vector<Key> keys(n);
  std::iota(keys.begin(), keys.end(), first);
  return SortedTable(std::move(keys));
}

TEST(BuildEytzinger, FifteenKeys) {
  const auto e = build_eytzinger(iota_table(1, 15));
  const std::vector<Key> expect{8, 4, 12, 2, 6, 10, 14, 1, 3, 5, 7, 9, 11, 13, 15};
  EXPECT_EQ(std::vector<Key>(e.layout().begin(), e.layout().end()), expect);

  const auto source = iota_table(1, 15);
  EXPECT_EQ(std::vector<Key>(e.layout().begin(), e.layout().end()), testing::bfs_of_median_bst(source.keys()));
}

TEST(BuildEytzinger, SmallTables) {
  const auto one = build_eytzinger(SortedTable({5}));
  EXPECT_EQ(std::vector<Key>(one.layout().begin(), one.layout().end()), std::vector<Key>{5});
  const auto three = build_eytzinger(SortedTable({1, 2, 3}));
  EXPECT_EQ(std::vector<Key>(three.layout().begin(), three.layout().end()), (std::vector<Key>{2, 1, 3}));
}

TEST(BuildEytzinger, EmptyTableIsAnError) { EXPECT_THROW(build_eytzinger(SortedTable()), UsageError); }

TEST(EytzingerSearch, Examples) {
  const auto e = build_eytzinger(iota_table(1, 15));
  EXPECT_EQ(eytzinger_search(e, 8), 0u);
  EXPECT_EQ(eytzinger_search(e, 16), 15u);
  const auto idx = eytzinger_search(e, 0);
  EXPECT_EQ(e.layout()[idx], 1u);
  EXPECT_EQ(eytzinger_search(e, 0, Prefetch::on), idx);
}

TEST(LayoutIndexToRank, Examples) {
  const auto e = build_eytzinger(iota_table(1, 15));
  EXPECT_EQ(layout_index_to_rank(e, 0), 7u);
  EXPECT_EQ(layout_index_to_rank(e, 15), 15u);
  EXPECT_THROW(layout_index_to_rank(e, 16), UsageError);
  EXPECT_EQ(layout_index_to_rank(build_eytzinger(SortedTable({5})), 0), 0u);
}

bool bst_holds(std::span<const Key> layout, std::size_t i, Key lo_excl, bool has_lo, Key hi_excl, bool has_hi) {
  if (i >= layout.size()) return true;
  const Key k = layout[i];
  if (has_lo && !(k > lo_excl)) return false;
  if (has_hi && !(k < hi_excl)) return false;
  return bst_holds(layout, 2 * i + 1, lo_excl, has_lo, k, true) && bst_holds(layout, 2 * i + 2, k, true, hi_excl, has_hi);
}

TEST(EytzingerProperty, StructureAndOracleEquivalence) {
  std::mt19937_64 rng(99);
  std::vector<std::size_t> sizes;
  for (std::size_t h = 1; h <= 12; ++h) sizes.push_back((std::size_t{1} << h) - 1);
  for (int i = 0; i < 150; ++i) sizes.push_back(1 + rng() % 4096);

  for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
    const SortedTable t(testing::random_keys(sizes[idx], static_cast<testing::KeyShape>(idx % 4), rng));
    const auto e = build_eytzinger(t);
    ASSERT_TRUE(bst_holds(e.layout(), 0, 0, false, 0, false));

    // rank_of is a bijection and sorting the layout by it reproduces the table.
    std::vector<Key> rebuilt(t.size());
    std::vector<bool> seen(t.size(), false);
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Rank r = e.rank_of()[i];
      ASSERT_LT(r, t.size());
      ASSERT_FALSE(seen[r]);
      seen[r] = true;
      rebuilt[r] = e.layout()[i];
    }
    ASSERT_TRUE(std::equal(rebuilt.begin(), rebuilt.end(), t.keys().begin()));

    for (Key q : testing::all_query_classes(t.keys(), 25, rng)) {
      const Rank expect = testing::scan_lower_bound(t.keys(), q);
      const auto off = eytzinger_search(e, q, Prefetch::off);
      const auto on = eytzinger_search(e, q, Prefetch::on, {8, 3});
      ASSERT_EQ(off, on);
      ASSERT_EQ(layout_index_to_rank(e, off), expect) << "n=" << t.size() << " q=" << q;
    }
  }
}

}  // namespace
}  // namespace lsi
