#pragma once

#include <cstdint>
#include <vector>

#include "lsi/types.hpp"

namespace lsi {

/// One piece of a piecewise-linear level: predicts
/// intercept + slope * (key - first_key) for keys from first_key up to the
/// next segment's first_key. `intercept` is the position of first_key in the
/// level below (a table rank on level 0).
struct PgmSegment {
  Key first_key = 0;
  double slope = 0;
  double intercept = 0;

  double evaluate(Key key) const noexcept;
  friend bool operator==(const PgmSegment&, const PgmSegment&) = default;
};

/// Static piecewise geometric model. levels[0] segments the table itself;
/// levels[l+1] segments the first keys of levels[l]; the last level holds a
/// single segment. Every segment predicts the position of each point it
/// covers within +-eps.
struct PgmModel {
  std::vector<std::vector<PgmSegment>> levels;
  std::uint64_t eps = 0;
  std::size_t n = 0;

  std::size_t height() const noexcept { return levels.size(); }
  /// Index into levels[0] of the segment responsible for `key`.
  std::size_t bottom_segment(Key key) const noexcept;
};

/// Greedy shrinking-cone segmentation of (points[i], i): each segment is
/// anchored at its first point and keeps every covered point within eps.
/// Exposed for tests; build_pgm applies it level by level.
std::vector<PgmSegment> segment_points(std::span<const Key> points, std::uint64_t eps);

/// Throws ConfigError for eps == 0 and TrainingError for an empty table.
PgmModel build_pgm(const SortedTable& table, std::uint64_t eps);

/// [pred - eps, pred + eps + 1) clamped to [0, n].
PredictedInterval pgm_predict(const PgmModel& model, Key query) noexcept;

}  // namespace lsi
