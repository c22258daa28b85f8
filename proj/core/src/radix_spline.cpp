#include "lsi/radix_spline.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <string>

#include "lsi/detail/model_math.hpp"
#include "lsi/errors.hpp"

namespace lsi {

namespace {

__extension__ typedef __int128 i128;

struct Offset {
  i128 dx;
  i128 dy;
};

// Sign of the cross product a x b: > 0 when b turns counter-clockwise from a.
i128 cross(const Offset& a, const Offset& b) { return a.dx * b.dy - a.dy * b.dx; }

}  // namespace

std::vector<SplinePoint> fit_spline(std::span<const Key> keys, std::uint64_t eps) {
  std::vector<SplinePoint> spline;
  if (keys.empty()) return spline;
  spline.push_back({keys[0], 0});
  if (keys.size() == 1) return spline;

  const i128 e = static_cast<i128>(eps);
  std::optional<Offset> upper, lower;  // corridor edges relative to spline.back()
  SplinePoint prev = spline.back();

  for (std::size_t i = 1; i < keys.size(); ++i) {
    const SplinePoint& base = spline.back();
    const Offset point{static_cast<i128>(keys[i] - base.key),
                       static_cast<i128>(i) - static_cast<i128>(base.rank)};
    const Offset up{point.dx, point.dy + e};
    const Offset down{point.dx, point.dy - e};

    if (!upper) {
      upper = up;
      lower = down;
    } else if (cross(*upper, point) > 0 || cross(*lower, point) < 0) {
      // Leaves the corridor: the previous key becomes a spline point.
      spline.push_back(prev);
      const SplinePoint& fresh = spline.back();
      const Offset rebased{static_cast<i128>(keys[i] - fresh.key),
                           static_cast<i128>(i) - static_cast<i128>(fresh.rank)};
      upper = Offset{rebased.dx, rebased.dy + e};
      lower = Offset{rebased.dx, rebased.dy - e};
    } else {
      if (cross(*upper, up) < 0) upper = up;
      if (cross(*lower, down) > 0) lower = down;
    }
    prev = {keys[i], i};
  }
  if (spline.back().key != prev.key) spline.push_back(prev);
  return spline;
}

std::uint64_t RsModel::prefix(Key key) const noexcept {
  const Key clamped = std::clamp(key, min_key, max_key);
  return shift >= 64 ? 0 : (clamped - min_key) >> shift;
}

double RsModel::interpolate(Key key) const noexcept {
  if (key <= spline.front().key) return static_cast<double>(spline.front().rank);
  if (key >= spline.back().key) return static_cast<double>(spline.back().rank);

  const std::uint64_t p = prefix(key);
  const auto begin = spline.begin() + radix_table[p];
  const auto end = spline.begin() + radix_table[p + 1];
  // First spline point with key > query lies in [begin, end].
  const auto right = std::upper_bound(begin, end, key, [](Key k, const SplinePoint& s) { return k < s.key; });
  const SplinePoint& a = *(right - 1);
  const SplinePoint& b = *right;
  const double t = static_cast<double>(key - a.key) / static_cast<double>(b.key - a.key);
  return static_cast<double>(a.rank) + t * (static_cast<double>(b.rank) - static_cast<double>(a.rank));
}

RsModel build_rs(const SortedTable& table, std::uint64_t eps, unsigned radix_bits) {
  if (eps == 0) throw ConfigError("RadixSpline eps must be >= 1");
  if (radix_bits < kMinRadixBits || radix_bits > kMaxRadixBits) {
    throw ConfigError("RadixSpline radix_bits must lie in [" + std::to_string(kMinRadixBits) + ", " +
                      std::to_string(kMaxRadixBits) + "], got " + std::to_string(radix_bits));
  }
  if (table.empty()) throw TrainingError("RadixSpline needs a non-empty table");

  RsModel model;
  model.eps = eps;
  model.radix_bits = radix_bits;
  model.n = table.size();
  model.min_key = table.min_key();
  model.max_key = table.max_key();
  const unsigned span_bits = static_cast<unsigned>(std::bit_width(model.max_key - model.min_key));
  model.shift = span_bits > radix_bits ? span_bits - radix_bits : 0;
  model.spline = fit_spline(table.keys(), eps);
  if (model.spline.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw TrainingError("RadixSpline: too many spline points for 32-bit radix offsets");
  }

  const std::size_t slots = (std::size_t{1} << radix_bits) + 1;
  model.radix_table.assign(slots, static_cast<std::uint32_t>(model.spline.size()));
  std::size_t next_prefix = 0;
  for (std::size_t i = 0; i < model.spline.size(); ++i) {
    const std::uint64_t p = model.prefix(model.spline[i].key);
    while (next_prefix <= p) model.radix_table[next_prefix++] = static_cast<std::uint32_t>(i);
  }
  return model;
}

PredictedInterval rs_predict(const RsModel& model, Key query) noexcept {
  const auto pred = detail::round_half_up(model.interpolate(query));
  return detail::make_interval(pred, model.eps, model.eps, model.n);
}

}  // namespace lsi
