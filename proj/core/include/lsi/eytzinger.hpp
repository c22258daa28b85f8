#pragma once

#include <bit>
#include <cstddef>
#include <vector>

#include "lsi/prefetch.hpp"
#include "lsi/types.hpp"

namespace lsi {

/// Prefetch distance for the Eytzinger descent, in elements: the hint for
/// node i targets layout index multiplier * i + offset.
struct EytzingerParams {
  std::size_t multiplier = 16;
  std::size_t offset = 16;
};

/// Sorted keys rearranged into the breadth-first order of a balanced BST
/// (children of node i at 2i+1 and 2i+2), plus the map back to sorted ranks.
class EytzingerTable {
 public:
  EytzingerTable() = default;

  std::span<const Key> layout() const noexcept { return layout_; }
  std::span<const Rank> rank_of() const noexcept { return rank_of_; }
  std::size_t size() const noexcept { return layout_.size(); }

 private:
  friend EytzingerTable build_eytzinger(const SortedTable& table);

  std::vector<Key> layout_;
  std::vector<Rank> rank_of_;
};

/// Throws UsageError on an empty table.
EytzingerTable build_eytzinger(const SortedTable& table);

namespace kernel {

/// Layout index of the smallest key >= x, or n when none exists.
template <bool kPrefetch>
std::size_t eytzinger_lower_bound(const Key* layout, std::size_t n, Key x,
                                  EytzingerParams params = {}) noexcept {
  std::size_t i = 0;
  while (i < n) {
    if constexpr (kPrefetch) prefetch_keep_at(layout, (params.multiplier * i + params.offset) * sizeof(Key));
    i = (x <= layout[i]) ? 2 * i + 1 : 2 * i + 2;
  }
  // Strip the trailing right turns (and the final left turn) to recover the
  // last node where the descent went left.
  const std::size_t j = (i + 1) >> (std::countr_one(i + 1) + 1);
  return j == 0 ? n : j - 1;
}

}  // namespace kernel

/// Layout index of the smallest key >= query, or etable.size() if every key is smaller.
std::size_t eytzinger_search(const EytzingerTable& etable, Key query, Prefetch prefetch = Prefetch::off,
                             EytzingerParams params = {});

/// Sorted rank of layout index `idx`; idx == size() maps to size().
/// Throws UsageError for idx > size().
Rank layout_index_to_rank(const EytzingerTable& etable, std::size_t idx);

}  // namespace lsi
