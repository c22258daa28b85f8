#pragma once

#include <cstdint>
#include <vector>

#include "lsi/types.hpp"

namespace lsi {

struct SplinePoint {
  Key key = 0;
  Rank rank = 0;
  friend bool operator==(const SplinePoint&, const SplinePoint&) = default;
};

/// Error-bounded linear spline over the CDF plus a radix table on key
/// prefixes. Prefixes are the top `radix_bits` bits of (key - min_key),
/// i.e. (key - min_key) >> shift.
struct RsModel {
  std::uint64_t eps = 0;
  unsigned radix_bits = 0;
  unsigned shift = 0;
  Key min_key = 0;
  Key max_key = 0;
  std::size_t n = 0;
  /// radix_table[p]: index of the first spline point whose prefix is >= p.
  /// Has 2^radix_bits + 1 entries; the last equals spline.size().
  std::vector<std::uint32_t> radix_table;
  std::vector<SplinePoint> spline;

  std::uint64_t prefix(Key key) const noexcept;
  /// Unrounded interpolated rank.
  double interpolate(Key key) const noexcept;
};

inline constexpr unsigned kMinRadixBits = 1;
inline constexpr unsigned kMaxRadixBits = 28;

/// Greedy spline corridor: a spline point is emitted whenever the corridor
/// from the last spline point can no longer keep every key within eps.
std::vector<SplinePoint> fit_spline(std::span<const Key> keys, std::uint64_t eps);

/// Throws ConfigError unless eps >= 1 and 1 <= radix_bits <= 28;
/// TrainingError for an empty table.
RsModel build_rs(const SortedTable& table, std::uint64_t eps, unsigned radix_bits);

/// [pred - eps, pred + eps + 1) clamped to [0, n].
PredictedInterval rs_predict(const RsModel& model, Key query) noexcept;

}  // namespace lsi
