#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lsi {

using Key = std::uint64_t;

/// 0-based position in a sorted table. The value n (table size) means
/// "no key is >= the query".
using Rank = std::size_t;

/// Half-open rank range [lo, hi).
struct SearchRange {
  Rank lo = 0;
  Rank hi = 0;

  bool empty() const noexcept { return lo == hi; }
  std::size_t size() const noexcept { return hi - lo; }

  friend bool operator==(const SearchRange&, const SearchRange&) = default;
};

/// Rank interval predicted by a model; clamped to [0, n].
using PredictedInterval = SearchRange;

enum class Prefetch : bool { off = false, on = true };

/// Strictly ascending sequence of distinct 64-bit keys.
class SortedTable {
 public:
  SortedTable() = default;

  /// Throws UsageError if `keys` is not strictly ascending.
  explicit SortedTable(std::vector<Key> keys);

  std::span<const Key> keys() const noexcept { return keys_; }
  const Key* data() const noexcept { return keys_.data(); }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  Key operator[](std::size_t i) const noexcept { return keys_[i]; }
  Key min_key() const noexcept { return keys_.front(); }
  Key max_key() const noexcept { return keys_.back(); }
  SearchRange full_range() const noexcept { return {0, keys_.size()}; }

  friend bool operator==(const SortedTable&, const SortedTable&) = default;

 private:
  std::vector<Key> keys_;
};

}  // namespace lsi
