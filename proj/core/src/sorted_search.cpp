#include "lsi/sorted_search.hpp"

#include <array>
#include <string>

#include "lsi/errors.hpp"

namespace lsi {

SortedTable::SortedTable(std::vector<Key> keys) : keys_(std::move(keys)) {
  for (std::size_t i = 1; i < keys_.size(); ++i) {
    if (keys_[i - 1] >= keys_[i]) {
      throw UsageError("sorted table: keys must be strictly ascending (violation at rank " +
                       std::to_string(i) + ")");
    }
  }
}

namespace {

struct RoutineName {
  Routine routine;
  std::string_view name;
};

constexpr std::array<RoutineName, 6> kRoutineNames{{
    {Routine::standard_bs, "S-BS"},
    {Routine::uniform_bs, "U-BS"},
    {Routine::lower_bound, "lower_bound"},
    {Routine::standard_kary, "S-KS"},
    {Routine::uniform_kary, "U-KS"},
    {Routine::eytzinger, "U-EL"},
}};

}  // namespace

std::string_view routine_name(Routine routine) noexcept {
  for (const auto& entry : kRoutineNames) {
    if (entry.routine == routine) return entry.name;
  }
  return "?";
}

std::optional<Routine> parse_routine(std::string_view name) noexcept {
  for (const auto& entry : kRoutineNames) {
    if (entry.name == name) return entry.routine;
  }
  return std::nullopt;
}

void check_range(const SortedTable& table, SearchRange range) {
  if (range.lo > range.hi || range.hi > table.size()) {
    throw UsageError("invalid search range [" + std::to_string(range.lo) + ", " +
                     std::to_string(range.hi) + ") for table of size " + std::to_string(table.size()));
  }
}

void check_kary(unsigned k) {
  if (k < kMinKary || k > kMaxKary) {
    throw ConfigError("k-ary search needs " + std::to_string(kMinKary) + " <= k <= " +
                      std::to_string(kMaxKary) + ", got " + std::to_string(k));
  }
}

void throw_not_sorted_layout(Routine routine) {
  throw UsageError(std::string(routine_name(routine)) +
                   " does not search the sorted layout; it cannot be used as a final stage here");
}

Rank standard_binary_search(const SortedTable& table, Key query, SearchRange range, Prefetch prefetch) {
  check_range(table, range);
  return prefetch == Prefetch::on ? kernel::standard_binary<true>(table.data(), query, range.lo, range.hi)
                                  : kernel::standard_binary<false>(table.data(), query, range.lo, range.hi);
}

Rank uniform_binary_search(const SortedTable& table, Key query, SearchRange range, Prefetch prefetch) {
  check_range(table, range);
  return prefetch == Prefetch::on ? kernel::uniform_binary<true>(table.data(), query, range.lo, range.hi)
                                  : kernel::uniform_binary<false>(table.data(), query, range.lo, range.hi);
}

Rank branchy_lower_bound(const SortedTable& table, Key query, SearchRange range) {
  check_range(table, range);
  return kernel::branchy_lower_bound(table.data(), query, range.lo, range.hi);
}

Rank standard_kary_search(const SortedTable& table, Key query, SearchRange range, unsigned k,
                          Prefetch prefetch) {
  check_kary(k);
  check_range(table, range);
  return prefetch == Prefetch::on ? kernel::standard_kary<true>(table.data(), query, range.lo, range.hi, k)
                                  : kernel::standard_kary<false>(table.data(), query, range.lo, range.hi, k);
}

Rank uniform_kary_search(const SortedTable& table, Key query, SearchRange range, unsigned k,
                         Prefetch prefetch) {
  check_kary(k);
  check_range(table, range);
  return prefetch == Prefetch::on ? kernel::uniform_kary<true>(table.data(), query, range.lo, range.hi, k)
                                  : kernel::uniform_kary<false>(table.data(), query, range.lo, range.hi, k);
}

Rank oracle_lower_bound(const SortedTable& table, Key query, SearchRange range) {
  check_range(table, range);
  for (Rank r = range.lo; r < range.hi; ++r) {
    if (table[r] >= query) return r;
  }
  return range.hi;
}

Rank search(Routine routine, const SortedTable& table, Key query, SearchRange range, unsigned k,
            Prefetch prefetch) {
  check_range(table, range);
  return with_sorted_kernel(routine, prefetch, k, [&](auto kern) {
    return kern(table.data(), query, range.lo, range.hi);
  });
}

std::optional<Rank> predecessor(const SortedTable& table, Key query) {
  const Rank lb = kernel::uniform_binary<false>(table.data(), query, 0, table.size());
  if (lb < table.size() && table[lb] == query) return lb;
  if (lb == 0) return std::nullopt;
  return lb - 1;
}

}  // namespace lsi
