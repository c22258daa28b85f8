#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lsi/errors.hpp"
#include "lsi/linear_cdf.hpp"
#include "support/oracles.hpp"

namespace lsi {
namespace {

const SortedTable& small_table() {
  static const SortedTable table({47, 105, 140, 289, 316, 358, 386, 398, 819, 939});
  return table;
}

TEST(FitLinearCdf, SmallExampleTable) {
  const auto m = fit_linear_cdf(small_table());
  // Frozen from an exact rational least-squares computation.
  EXPECT_NEAR(m.slope, 0.009605446876547878, 1e-15);
  EXPECT_NEAR(m.intercept_at_zero(), 0.8528118209747709, 1e-12);
  EXPECT_NEAR(m.max_error, 2.324220322159174, 1e-9);
  EXPECT_EQ(m.eps, 3u);
  EXPECT_EQ(m.n, 10u);
}

TEST(FitLinearCdf, IntervalsOnSmallExample) {
  const auto m = fit_linear_cdf(small_table());
  const std::vector<SearchRange> expect{{0, 5}, {0, 6}, {0, 6}, {1, 8}, {1, 8},
                                        {1, 8}, {2, 9}, {2, 9}, {6, 10}, {7, 10}};
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(predict_interval(m, small_table()[i]), expect[i]) << "rank " << i;
}

TEST(FitLinearCdf, PerfectlyLinearHasZeroEps) {
  std::vector<Key> keys;
  for (Key k = 10; k < 1010; k += 10) keys.push_back(k);
  const auto m = fit_linear_cdf(SortedTable(keys));
  EXPECT_EQ(m.eps, 0u);
  EXPECT_EQ(predict_interval(m, 500), (SearchRange{49, 50}));
}

TEST(FitLinearCdf, TooSmallTables) {
  EXPECT_THROW(fit_linear_cdf(SortedTable(std::vector<Key>{})), TrainingError);
  EXPECT_THROW(fit_linear_cdf(SortedTable({4})), TrainingError);
  const auto m = fit_linear_cdf(SortedTable({4}), true);
  EXPECT_EQ(m.eps, 0u);
  EXPECT_EQ(predict_interval(m, 4), (SearchRange{0, 1}));
}

TEST(LinearCdfProperty, MatchesClosedFormAndContainsMembers) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 2000;
    const auto shape = static_cast<testing::KeyShape>(trial % 4);
    const SortedTable t(testing::random_keys(n, shape, rng));
    const auto m = fit_linear_cdf(t);
    const auto ref = testing::closed_form_fit(t.keys());

    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long double pred = ref.slope * static_cast<long double>(t[i]) + ref.intercept;
      worst = std::max(worst, std::fabs(pred - static_cast<long double>(i)));
    }
    // Uncentered normal equations cancel badly once keys approach 2^64, so the
    // closed form is only trusted on the small-key shapes.
    if (shape == testing::KeyShape::dense || shape == testing::KeyShape::sparse_small) {
      ASSERT_NEAR(m.max_error, static_cast<double>(worst), 1e-6 * std::max<double>(1.0, n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto iv = predict_interval(m, t[i]);
      ASSERT_LE(iv.lo, i);
      ASSERT_LT(i, iv.hi);
      ASSERT_LE(iv.size(), 2 * m.eps + 1);
    }
  }
}

}  // namespace
}  // namespace lsi
