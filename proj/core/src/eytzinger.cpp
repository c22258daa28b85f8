#include "lsi/eytzinger.hpp"

#include <string>

#include "lsi/errors.hpp"

namespace lsi {

namespace {

// In-order walk of the implicit heap over [0, n); the k-th node visited
// receives the k-th smallest key.
void fill_in_order(const SortedTable& table, std::vector<Key>& layout, std::vector<Rank>& rank_of,
                   std::size_t node, Rank& next) {
  const std::size_t n = layout.size();
  if (node >= n) return;
  fill_in_order(table, layout, rank_of, 2 * node + 1, next);
  layout[node] = table[next];
  rank_of[node] = next;
  ++next;
  fill_in_order(table, layout, rank_of, 2 * node + 2, next);
}

}  // namespace

EytzingerTable build_eytzinger(const SortedTable& table) {
  if (table.empty()) throw UsageError("build_eytzinger: table is empty");
  EytzingerTable out;
  out.layout_.resize(table.size());
  out.rank_of_.resize(table.size());
  Rank next = 0;
  fill_in_order(table, out.layout_, out.rank_of_, 0, next);
  return out;
}

std::size_t eytzinger_search(const EytzingerTable& etable, Key query, Prefetch prefetch,
                             EytzingerParams params) {
  const auto layout = etable.layout();
  return prefetch == Prefetch::on
             ? kernel::eytzinger_lower_bound<true>(layout.data(), layout.size(), query, params)
             : kernel::eytzinger_lower_bound<false>(layout.data(), layout.size(), query, params);
}

Rank layout_index_to_rank(const EytzingerTable& etable, std::size_t idx) {
  if (idx > etable.size()) {
    throw UsageError("layout index " + std::to_string(idx) + " out of range for Eytzinger table of size " +
                     std::to_string(etable.size()));
  }
  return idx == etable.size() ? etable.size() : etable.rank_of()[idx];
}

}  // namespace lsi
