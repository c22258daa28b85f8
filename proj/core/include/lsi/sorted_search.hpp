#pragma once

// Final-stage search routines over a sorted array.
//
// Every routine returns the lower-bound rank of `query` inside the half-open
// range [lo, hi): the smallest r in [lo, hi) with keys[r] >= query, or hi when
// no such r exists. Keys must be distinct. Prefetching never changes the
// result.

#include <optional>
#include <string_view>
#include <utility>

#include "lsi/prefetch.hpp"
#include "lsi/types.hpp"

namespace lsi {

enum class Routine : std::uint8_t {
  standard_bs,   // S-BS
  uniform_bs,    // U-BS
  lower_bound,   // branchy lower_bound template
  standard_kary, // S-KS
  uniform_kary,  // U-KS
  eytzinger,     // U-EL (stand-alone only, needs its own layout)
};

inline constexpr unsigned kDefaultKary = 3;
inline constexpr unsigned kMinKary = 2;
inline constexpr unsigned kMaxKary = 16;

std::string_view routine_name(Routine routine) noexcept;
std::optional<Routine> parse_routine(std::string_view name) noexcept;

/// True for routines that run directly on the sorted layout (everything except U-EL).
constexpr bool uses_sorted_layout(Routine routine) noexcept { return routine != Routine::eytzinger; }

/// Whether the routine accepts a prefetch flag at all.
constexpr bool supports_prefetch(Routine routine) noexcept { return routine != Routine::lower_bound; }

/// Throws UsageError unless lo <= hi <= table.size().
void check_range(const SortedTable& table, SearchRange range);

[[noreturn]] void throw_not_sorted_layout(Routine routine);

/// Throws ConfigError unless kMinKary <= k <= kMaxKary.
void check_kary(unsigned k);

namespace kernel {

// Unchecked kernels. `a` points at rank 0 of the table; ranks are absolute.

template <bool kPrefetch>
Rank standard_binary(const Key* a, Key x, Rank lo, Rank hi) noexcept {
  while (lo < hi) {
    const Rank m = lo + (hi - lo) / 2;
    if constexpr (kPrefetch) {
      prefetch_nta(a + lo + (m - lo) / 2);
      prefetch_nta(a + m + (hi - m) / 2);
    }
    if (x < a[m]) {
      hi = m;
    } else if (x > a[m]) {
      lo = m + 1;
    } else {
      return m;
    }
  }
  return hi;
}

template <bool kPrefetch>
Rank uniform_binary(const Key* a, Key x, Rank lo, Rank hi) noexcept {
  if (lo == hi) return hi;
  const Key* base = a + lo;
  std::size_t n = hi - lo;
  while (n > 1) {
    const std::size_t half = n / 2;
    if constexpr (kPrefetch) {
      prefetch_nta(base + half / 2);
      prefetch_nta(base + half + half / 2);
    }
    base = (base[half] < x) ? base + half : base;
    n -= half;
  }
  return static_cast<Rank>(base - a) + (*base < x);
}

inline Rank branchy_lower_bound(const Key* a, Key x, Rank lo, Rank hi) noexcept {
  Rank first = lo;
  std::size_t count = hi - lo;
  while (count > 0) {
    const std::size_t step = count / 2;
    const Rank it = first + step;
    if (a[it] < x) {
      first = it + 1;
      count -= step + 1;
    } else {
      count = step;
    }
  }
  return first;
}

// Hints the first separator each of the k segments would probe next round.
inline void prefetch_kary_round(const Key* a, Rank left, Rank right, unsigned k) noexcept {
  const std::size_t len = right - left;
  Rank seg_lo = left;
  for (unsigned i = 1; i <= k; ++i) {
    const Rank seg_hi = left + (i * len) / k;
    prefetch_nta(a + seg_lo + (seg_hi - seg_lo) / k);
    seg_lo = seg_hi + 1;
  }
}

// The answer always lies in [left, right]; a separator at `right` is never read.
template <bool kPrefetch>
Rank standard_kary(const Key* a, Key x, Rank left, Rank right, unsigned k) noexcept {
  while (left < right) {
    if constexpr (kPrefetch) prefetch_kary_round(a, left, right, k);
    const std::size_t len = right - left;
    Rank seg_left = left;
    Rank seg_right = left + len / k;
    for (unsigned i = 2; i <= k; ++i) {
      if (x <= a[seg_right]) break;
      seg_left = seg_right + 1;
      seg_right = left + (i * len) / k;
    }
    left = seg_left;
    right = seg_right;
  }
  return left;
}

template <bool kPrefetch>
Rank uniform_kary(const Key* a, Key x, Rank left, Rank right, unsigned k) noexcept {
  while (left < right) {
    if constexpr (kPrefetch) prefetch_kary_round(a, left, right, k);
    const std::size_t len = right - left;
    Rank seg_left = left;
    Rank seg_right = left + len / k;
    for (unsigned i = 2; i <= k; ++i) {
      const Rank next_separator = left + (i * len) / k;
      const bool beyond = x > a[seg_right];
      seg_left = beyond ? seg_right + 1 : seg_left;
      seg_right = beyond ? next_separator : seg_right;
    }
    left = seg_left;
    right = seg_right;
  }
  return left;
}

}  // namespace kernel

/// Calls `fn(kernel)` where `kernel(const Key*, Key, Rank lo, Rank hi) -> Rank`
/// is the unchecked kernel for a sorted-layout routine. Lets callers
/// instantiate one tight loop per routine instead of dispatching per query.
/// Throws UsageError for Routine::eytzinger and ConfigError for a bad k.
template <class Fn>
decltype(auto) with_sorted_kernel(Routine routine, Prefetch prefetch, unsigned k, Fn&& fn) {
  const bool pf = prefetch == Prefetch::on;
  switch (routine) {
    case Routine::standard_bs:
      if (pf) return fn([](const Key* a, Key x, Rank lo, Rank hi) { return kernel::standard_binary<true>(a, x, lo, hi); });
      return fn([](const Key* a, Key x, Rank lo, Rank hi) { return kernel::standard_binary<false>(a, x, lo, hi); });
    case Routine::uniform_bs:
      if (pf) return fn([](const Key* a, Key x, Rank lo, Rank hi) { return kernel::uniform_binary<true>(a, x, lo, hi); });
      return fn([](const Key* a, Key x, Rank lo, Rank hi) { return kernel::uniform_binary<false>(a, x, lo, hi); });
    case Routine::lower_bound:
      return fn([](const Key* a, Key x, Rank lo, Rank hi) { return kernel::branchy_lower_bound(a, x, lo, hi); });
    case Routine::standard_kary:
      check_kary(k);
      if (pf) return fn([k](const Key* a, Key x, Rank lo, Rank hi) { return kernel::standard_kary<true>(a, x, lo, hi, k); });
      return fn([k](const Key* a, Key x, Rank lo, Rank hi) { return kernel::standard_kary<false>(a, x, lo, hi, k); });
    case Routine::uniform_kary:
      check_kary(k);
      if (pf) return fn([k](const Key* a, Key x, Rank lo, Rank hi) { return kernel::uniform_kary<true>(a, x, lo, hi, k); });
      return fn([k](const Key* a, Key x, Rank lo, Rank hi) { return kernel::uniform_kary<false>(a, x, lo, hi, k); });
    case Routine::eytzinger:
      break;
  }
  throw_not_sorted_layout(routine);
}

// Checked entry points.

Rank standard_binary_search(const SortedTable& table, Key query, SearchRange range,
                            Prefetch prefetch = Prefetch::off);

Rank uniform_binary_search(const SortedTable& table, Key query, SearchRange range,
                           Prefetch prefetch = Prefetch::off);

Rank branchy_lower_bound(const SortedTable& table, Key query, SearchRange range);

Rank standard_kary_search(const SortedTable& table, Key query, SearchRange range,
                          unsigned k = kDefaultKary, Prefetch prefetch = Prefetch::off);

Rank uniform_kary_search(const SortedTable& table, Key query, SearchRange range,
                         unsigned k = kDefaultKary, Prefetch prefetch = Prefetch::off);

/// Reference lower bound by linear scan. For tests and verification only.
Rank oracle_lower_bound(const SortedTable& table, Key query, SearchRange range);

/// Runs any sorted-layout routine over `range`.
Rank search(Routine routine, const SortedTable& table, Key query, SearchRange range,
            unsigned k = kDefaultKary, Prefetch prefetch = Prefetch::off);

/// Rank j with keys[j] <= query < keys[j+1], or nullopt when query < keys[0].
std::optional<Rank> predecessor(const SortedTable& table, Key query);

}  // namespace lsi
