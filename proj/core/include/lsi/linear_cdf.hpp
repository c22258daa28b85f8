#pragma once

#include <cstdint>

#include "lsi/types.hpp"

namespace lsi {

/// Straight line fitted to the CDF of a table: rank ~ slope * key + b.
///
/// The line is stored relative to `origin` (the smallest key) so that tables
/// of large keys do not lose precision; `intercept_at_zero()` gives the
/// textbook intercept b. `eps` is the ceiling of the largest unrounded
/// distance |F(key) - rank| over the table (0-based ranks).
struct LinearCdfModel {
  double slope = 0;
  double intercept = 0;
  Key origin = 0;
  std::uint64_t eps = 0;
  std::size_t n = 0;
  /// Largest unrounded |F(key) - rank| observed at training time.
  double max_error = 0;

  /// Unrounded F(key).
  double evaluate(Key key) const noexcept;
  double intercept_at_zero() const noexcept { return intercept - slope * static_cast<double>(origin); }
};

/// Least-squares fit over (key_i, i). Throws TrainingError for n < 2 unless
/// `permissive` is set, in which case n == 1 yields a constant model with eps 0.
LinearCdfModel fit_linear_cdf(const SortedTable& table, bool permissive = false);

/// [round(F(q)) - eps, round(F(q)) + eps + 1) clamped to [0, n].
PredictedInterval predict_interval(const LinearCdfModel& model, Key query) noexcept;

}  // namespace lsi
