#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "lsi/data.hpp"
#include "lsi/errors.hpp"

namespace lsi {
namespace {

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("lsi_data_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  void write_raw(const std::filesystem::path& p, const std::vector<std::uint64_t>& words, std::size_t trim = 0) {
    std::string bytes;
    for (auto w : words) {
      for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>(w >> (8 * i)));
    }
    bytes.resize(bytes.size() - trim);
    std::ofstream(p, std::ios::binary) << bytes;
  }

  LoadError::Reason load_failure(const std::filesystem::path& p) {
    try {
      read_table(p);
    } catch (const LoadError& e) {
      return e.reason();
    }
    ADD_FAILURE() << "no LoadError";
    return LoadError::Reason::corrupt;
  }

  std::filesystem::path dir_;
};

TEST(GenSynthetic, OddKeys) {
  const auto t = gen_synthetic(5, 0);
  EXPECT_EQ(std::vector<Key>(t.keys().begin(), t.keys().end()), (std::vector<Key>{1, 3, 5, 7, 9}));
  EXPECT_THROW(gen_synthetic(0, 0), UsageError);
  EXPECT_THROW(gen_synthetic(1000, 0, MemoryBudget{1000}), SizingError);
}

TEST(GenSyntheticQueries, ExactHalvesAndDeterministic) {
  const auto t = gen_synthetic(1000, 0);
  const auto a = gen_synthetic_queries(t, 10'000, 77);
  const auto b = gen_synthetic_queries(t, 10'000, 77);
  const auto c = gen_synthetic_queries(t, 10'000, 78);
  EXPECT_EQ(a.queries, b.queries);
  EXPECT_NE(a.queries, c.queries);
  ASSERT_EQ(a.queries.size(), 10'000u);
  const auto odd = std::count_if(a.queries.begin(), a.queries.end(), [](Key q) { return q % 2 == 1; });
  EXPECT_EQ(odd, 5000);
  EXPECT_EQ(a.present, 5000u);
  for (Key q : a.queries) EXPECT_LE(q, 2000u);
  EXPECT_THROW(gen_synthetic_queries(t, 3, 1), UsageError);
  EXPECT_THROW(gen_synthetic_queries(SortedTable({2, 4}), 2, 1), UsageError);
}

TEST(GenMixedQueries, ExactHalves) {
  const SortedTable t({10, 20, 30, 40, 50, 1000});
  const auto batch = gen_mixed_queries(t, 400, 9);
  const auto members = std::count_if(batch.queries.begin(), batch.queries.end(), [&](Key q) {
    return std::binary_search(t.keys().begin(), t.keys().end(), q);
  });
  EXPECT_EQ(members, 200);
  for (Key q : batch.queries) {
    EXPECT_GE(q, 10u);
    EXPECT_LE(q, 1000u);
  }
  EXPECT_EQ(gen_mixed_queries(t, 400, 9).queries, batch.queries);
}

TEST(GenMixedQueries, DenseTableHasNoGaps) {
  EXPECT_THROW(gen_mixed_queries(SortedTable({4, 5, 6, 7}), 4, 1), GenerationError);
}

TEST(ResampleCdf, Examples) {
  std::vector<Key> keys(100);
  for (Key i = 0; i < 100; ++i) keys[i] = i;
  const auto r = resample_cdf(SortedTable(keys), 10);
  EXPECT_EQ(std::vector<Key>(r.keys().begin(), r.keys().end()),
            (std::vector<Key>{0, 11, 22, 33, 44, 55, 66, 77, 88, 99}));
  EXPECT_THROW(resample_cdf(SortedTable(keys), 1), UsageError);
  EXPECT_THROW(resample_cdf(SortedTable(keys), 101), UsageError);
  EXPECT_EQ(resample_cdf(SortedTable(keys), 100).size(), 100u);
}

TEST(LevelConfig, Sizes) {
  LevelConfig lv;
  EXPECT_EQ(lv.size_of("L2"), 31'500u);
  EXPECT_FALSE(lv.size_of("L5").has_value());
  EXPECT_NO_THROW(lv.validate());
  lv.l3 = 10;
  EXPECT_THROW(lv.validate(), ConfigError);
}

TEST_F(TempDir, TableFileRoundTrip) {
  const SortedTable t({1, 7, 1ULL << 40, UINT64_MAX});
  write_table(dir_ / "k.bin", t);
  EXPECT_EQ(read_table(dir_ / "k.bin"), t);
  EXPECT_EQ(std::filesystem::file_size(dir_ / "k.bin"), 8u * 5);
}

TEST_F(TempDir, QueriesKeepOrderAndDuplicates) {
  const std::vector<Key> q{9, 3, 3, 100};
  write_queries(dir_ / ("q" + std::string(kQueryFileExtension)), q);
  EXPECT_EQ(read_queries(dir_ / ("q" + std::string(kQueryFileExtension))), q);
}

TEST_F(TempDir, MalformedFiles) {
  write_raw(dir_ / "short", {5, 1, 2});
  EXPECT_EQ(load_failure(dir_ / "short"), LoadError::Reason::truncated);
  write_raw(dir_ / "partial", {2, 1, 2}, 3);
  EXPECT_EQ(load_failure(dir_ / "partial"), LoadError::Reason::truncated);
  write_raw(dir_ / "empty", {}, 0);
  EXPECT_EQ(load_failure(dir_ / "empty"), LoadError::Reason::truncated);
  write_raw(dir_ / "dup", {3, 1, 4, 4});
  EXPECT_EQ(load_failure(dir_ / "dup"), LoadError::Reason::duplicate);
  write_raw(dir_ / "unsorted", {3, 1, 9, 4});
  EXPECT_EQ(load_failure(dir_ / "unsorted"), LoadError::Reason::unsorted);
  EXPECT_EQ(load_failure(dir_ / "missing"), LoadError::Reason::io);
}

}  // namespace
}  // namespace lsi
