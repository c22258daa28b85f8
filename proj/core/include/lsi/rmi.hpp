#pragma once

#include <cstdint>
#include <vector>

#include "lsi/types.hpp"

namespace lsi {

/// Linear submodel anchored at `origin`: rank ~ intercept + slope * (key - origin).
struct LinearSubmodel {
  double slope = 0;
  double intercept = 0;
  Key origin = 0;

  double evaluate(Key key) const noexcept;
  friend bool operator==(const LinearSubmodel&, const LinearSubmodel&) = default;
};

/// Two-stage recursive model index. The root line picks one of `branching`
/// leaf lines; the leaf prediction is clamped to the rank span of the keys
/// routed to that leaf and widened by the leaf's observed error bounds.
struct RmiModel {
  LinearSubmodel root;
  std::vector<LinearSubmodel> leaves;
  /// leaf_begin[l] is the first rank routed to leaf l; leaf_begin[B] == n.
  std::vector<Rank> leaf_begin;
  std::vector<std::uint64_t> err_lo;
  std::vector<std::uint64_t> err_hi;
  std::size_t branching = 0;
  std::size_t n = 0;

  std::size_t leaf_for(Key key) const noexcept;
  /// Rounded leaf prediction, clamped to [leaf_begin[l], leaf_begin[l+1]].
  std::int64_t leaf_prediction(std::size_t leaf, Key key) const noexcept;
};

/// Throws ConfigError for branching == 0 and TrainingError for an empty table.
RmiModel build_rmi(const SortedTable& table, std::size_t branching);

/// [pred - err_lo, pred + err_hi + 1) of the routed leaf, clamped to [0, n].
PredictedInterval rmi_predict(const RmiModel& model, Key query) noexcept;

}  // namespace lsi
