#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "lsi/types.hpp"

namespace lsi::detail {

/// Signed distance key - origin as a double, exact in integer space before conversion.
inline double key_offset(Key key, Key origin) noexcept {
  return key >= origin ? static_cast<double>(key - origin) : -static_cast<double>(origin - key);
}

/// floor(v + 0.5), saturated into the int64 range.
inline std::int64_t round_half_up(double v) noexcept {
  constexpr double kLimit = 9.0e18;
  const double r = std::floor(v + 0.5);
  if (!(r > -kLimit)) return static_cast<std::int64_t>(-kLimit);  // also catches NaN
  if (r > kLimit) return static_cast<std::int64_t>(kLimit);
  return static_cast<std::int64_t>(r);
}

/// [pred - below, pred + above + 1) clamped to [0, n].
inline PredictedInterval make_interval(std::int64_t pred, std::uint64_t below, std::uint64_t above,
                                       std::size_t n) noexcept {
  const auto clamp = [n](long double v) -> Rank {
    if (v <= 0) return 0;
    if (v >= static_cast<long double>(n)) return n;
    return static_cast<Rank>(v);
  };
  const long double p = static_cast<long double>(pred);
  const Rank lo = clamp(p - static_cast<long double>(below));
  const Rank hi = clamp(p + static_cast<long double>(above) + 1);
  return {lo, std::max(lo, hi)};
}

inline std::int64_t clamp_rank(std::int64_t v, std::int64_t lo, std::int64_t hi) noexcept {
  return std::clamp(v, lo, hi);
}

struct LineFit {
  double slope = 0;
  double intercept = 0;  // value at the origin key
};

/// Least-squares line through (keys[i] - origin, first_rank + i). Two-pass,
/// centered. A single point (or zero key variance) yields a constant.
inline LineFit least_squares(std::span<const Key> keys, Key origin, double first_rank) noexcept {
  const std::size_t m = keys.size();
  if (m == 0) return {0.0, first_rank};
  long double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_x += key_offset(keys[i], origin);
    mean_y += first_rank + static_cast<long double>(i);
  }
  mean_x /= m;
  mean_y /= m;
  long double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const long double dx = key_offset(keys[i], origin) - mean_x;
    const long double dy = first_rank + static_cast<long double>(i) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (sxx <= 0) return {0.0, static_cast<double>(mean_y)};
  const long double slope = sxy / sxx;
  return {static_cast<double>(slope), static_cast<double>(mean_y - slope * mean_x)};
}

}  // namespace lsi::detail
