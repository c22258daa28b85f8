#include "lsi/rmi.hpp"

#include <cmath>
#include <string>

#include "lsi/detail/model_math.hpp"
#include "lsi/errors.hpp"

namespace lsi {

double LinearSubmodel::evaluate(Key key) const noexcept {
  return intercept + slope * detail::key_offset(key, origin);
}

std::size_t RmiModel::leaf_for(Key key) const noexcept {
  // Monotone in key: the root slope is non-negative.
  const double scaled = root.evaluate(key) * static_cast<double>(branching) / static_cast<double>(n);
  if (!(scaled > 0)) return 0;
  if (scaled >= static_cast<double>(branching - 1)) return branching - 1;
  return static_cast<std::size_t>(scaled);
}

std::int64_t RmiModel::leaf_prediction(std::size_t leaf, Key key) const noexcept {
  const auto raw = detail::round_half_up(leaves[leaf].evaluate(key));
  return detail::clamp_rank(raw, static_cast<std::int64_t>(leaf_begin[leaf]),
                            static_cast<std::int64_t>(leaf_begin[leaf + 1]));
}

RmiModel build_rmi(const SortedTable& table, std::size_t branching) {
  if (branching == 0) throw ConfigError("RMI branching factor must be >= 1");
  if (table.empty()) throw TrainingError("RMI needs a non-empty table");

  const std::size_t n = table.size();
  RmiModel model;
  model.branching = branching;
  model.n = n;

  const auto root_fit = detail::least_squares(table.keys(), table.min_key(), 0.0);
  model.root = {root_fit.slope, root_fit.intercept, table.min_key()};

  // Routing is monotone, so each leaf owns a contiguous rank span.
  model.leaf_begin.assign(branching + 1, n);
  std::size_t next_leaf = 0;
  for (Rank r = 0; r < n; ++r) {
    const std::size_t leaf = model.leaf_for(table[r]);
    while (next_leaf <= leaf) model.leaf_begin[next_leaf++] = r;
  }

  model.leaves.resize(branching);
  model.err_lo.assign(branching, 0);
  model.err_hi.assign(branching, 0);
  for (std::size_t leaf = 0; leaf < branching; ++leaf) {
    const Rank begin = model.leaf_begin[leaf];
    const Rank end = model.leaf_begin[leaf + 1];
    if (begin == end) {
      // Empty leaf: any query routed here has lower bound exactly `begin`.
      model.leaves[leaf] = {0.0, static_cast<double>(begin), table.min_key()};
      continue;
    }
    const auto span = table.keys().subspan(begin, end - begin);
    const auto fit = detail::least_squares(span, span.front(), static_cast<double>(begin));
    model.leaves[leaf] = {fit.slope, fit.intercept, span.front()};

    std::int64_t under = 0, over = 0;
    for (Rank r = begin; r < end; ++r) {
      const std::int64_t diff = model.leaf_prediction(leaf, table[r]) - static_cast<std::int64_t>(r);
      over = std::max(over, diff);
      under = std::max(under, -diff);
    }
    model.err_lo[leaf] = static_cast<std::uint64_t>(over);   // prediction above rank
    model.err_hi[leaf] = static_cast<std::uint64_t>(under);  // prediction below rank
  }
  return model;
}

PredictedInterval rmi_predict(const RmiModel& model, Key query) noexcept {
  const std::size_t leaf = model.leaf_for(query);
  return detail::make_interval(model.leaf_prediction(leaf, query), model.err_lo[leaf], model.err_hi[leaf],
                               model.n);
}

}  // namespace lsi
