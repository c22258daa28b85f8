#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "lsi/types.hpp"

namespace lsi {

struct QueryBatch {
  std::vector<Key> queries;
  std::size_t present = 0;
  std::size_t absent = 0;
  std::uint64_t seed = 0;
};

/// Table sizes (in elements) chosen to fit each level of one machine's
/// memory hierarchy. Defaults describe the 64KB/256KB/8MB/32GB reference box.
struct LevelConfig {
  std::size_t l1 = 3'700;
  std::size_t l2 = 31'500;
  std::size_t l3 = 750'000;
  std::size_t l4 = 200'000'000;

  /// Throws ConfigError unless 0 < l1 < l2 < l3 < l4.
  void validate() const;
  /// "L1".."L4"; nullopt for anything else.
  std::optional<std::size_t> size_of(std::string_view level) const noexcept;
};

struct MemoryBudget {
  std::size_t max_bytes = std::size_t{8} << 30;
};

/// The n odd keys 1, 3, ..., 2n-1. `seed` is accepted for interface
/// stability and currently unused. Throws UsageError for n == 0 and
/// SizingError when n keys exceed the budget.
SortedTable gen_synthetic(std::size_t n, std::uint64_t seed, MemoryBudget budget = {});

/// total/2 odd keys drawn with replacement from a synthetic table and total/2
/// even keys drawn uniformly from [0, 2n+2), shuffled. Throws UsageError for
/// odd `total` or a table that is not {1, 3, ..., 2n-1}.
QueryBatch gen_synthetic_queries(const SortedTable& table, std::size_t total, std::uint64_t seed);

/// Keys at source ranks floor(i (N-1) / (n-1)), i in [0, n).
/// Throws UsageError unless 2 <= n <= N.
SortedTable resample_cdf(const SortedTable& source, std::size_t n);

inline constexpr unsigned kAbsentRejectionLimit = 1000;

/// count/2 members drawn with replacement plus count/2 non-members drawn
/// uniformly from [min_key, max_key] by rejection, shuffled. Throws
/// UsageError for odd `count` and GenerationError when a non-member cannot be
/// found within kAbsentRejectionLimit draws.
QueryBatch gen_mixed_queries(const SortedTable& table, std::size_t count, std::uint64_t seed);

// Key files: u64 LE count followed by count u64 LE keys. read_table requires
// strictly ascending keys; query files use the same layout without ordering
// constraints and conventionally carry the ".queries" extension.

inline constexpr std::string_view kQueryFileExtension = ".queries";

/// Throws LoadError (io, truncated, unsorted or duplicate).
SortedTable read_table(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const SortedTable& table);

std::vector<Key> read_queries(const std::filesystem::path& path);
void write_queries(const std::filesystem::path& path, std::span<const Key> queries);

}  // namespace lsi
