#include "lsi/pgm.hpp"

#include <algorithm>
#include <optional>

#include "lsi/detail/model_math.hpp"
#include "lsi/errors.hpp"

namespace lsi {

namespace {

__extension__ typedef __int128 i128;

// Slope dy/dx with dx > 0, compared exactly by cross-multiplication.
struct Slope {
  i128 dy;
  i128 dx;
};

bool less(const Slope& a, const Slope& b) { return a.dy * b.dx < b.dy * a.dx; }

double to_double(const Slope& s) { return static_cast<double>(s.dy) / static_cast<double>(s.dx); }

// Last index in [first, last) of `segments` whose first_key <= key, searched
// only inside the window; nullopt when the window cannot decide.
std::optional<std::size_t> covering_in_window(const std::vector<PgmSegment>& segments, Key key,
                                              std::size_t first, std::size_t last) {
  const auto begin = segments.begin() + static_cast<std::ptrdiff_t>(first);
  const auto end = segments.begin() + static_cast<std::ptrdiff_t>(last);
  const auto it = std::upper_bound(begin, end, key, [](Key k, const PgmSegment& s) { return k < s.first_key; });
  if (it == begin && first > 0) return std::nullopt;
  if (it == end && last < segments.size()) return std::nullopt;
  return it == segments.begin() ? 0 : static_cast<std::size_t>(it - segments.begin()) - 1;
}

std::size_t covering_segment(const std::vector<PgmSegment>& segments, Key key, std::int64_t pred,
                             std::uint64_t eps) {
  const auto m = static_cast<std::int64_t>(segments.size());
  const auto radius = static_cast<std::int64_t>(eps) + 1;
  const auto first = static_cast<std::size_t>(std::clamp<std::int64_t>(pred - radius, 0, m));
  const auto last = static_cast<std::size_t>(std::clamp<std::int64_t>(pred + radius + 1, 0, m));
  if (auto hit = covering_in_window(segments, key, first, last)) return *hit;
  return *covering_in_window(segments, key, 0, segments.size());
}

}  // namespace

double PgmSegment::evaluate(Key key) const noexcept {
  return intercept + slope * detail::key_offset(key, first_key);
}

std::vector<PgmSegment> segment_points(std::span<const Key> points, std::uint64_t eps) {
  std::vector<PgmSegment> segments;
  if (points.empty()) return segments;

  const i128 e = static_cast<i128>(eps);
  std::size_t anchor = 0;
  std::optional<Slope> lo, hi;

  const auto close = [&] {
    double slope = 0;
    if (lo && hi) slope = std::max(0.0, 0.5 * (to_double(*lo) + to_double(*hi)));
    segments.push_back({points[anchor], slope, static_cast<double>(anchor)});
  };

  for (std::size_t i = 1; i < points.size(); ++i) {
    const i128 dx = static_cast<i128>(points[i] - points[anchor]);
    const i128 dy = static_cast<i128>(i - anchor);
    Slope cand_lo{dy - e, dx};
    Slope cand_hi{dy + e, dx};
    Slope next_lo = (lo && less(cand_lo, *lo)) ? *lo : cand_lo;
    Slope next_hi = (hi && less(*hi, cand_hi)) ? *hi : cand_hi;
    if (less(next_hi, next_lo)) {
      close();
      anchor = i;
      lo.reset();
      hi.reset();
      continue;
    }
    lo = next_lo;
    hi = next_hi;
  }
  close();
  return segments;
}

std::size_t PgmModel::bottom_segment(Key key) const noexcept {
  std::size_t seg = 0;
  for (std::size_t level = levels.size() - 1; level > 0; --level) {
    const PgmSegment& s = levels[level][seg];
    const auto pred = detail::round_half_up(s.evaluate(key));
    seg = covering_segment(levels[level - 1], key, pred, eps);
  }
  return seg;
}

PgmModel build_pgm(const SortedTable& table, std::uint64_t eps) {
  if (eps == 0) throw ConfigError("PGM eps must be >= 1");
  if (table.empty()) throw TrainingError("PGM needs a non-empty table");

  PgmModel model;
  model.eps = eps;
  model.n = table.size();
  model.levels.push_back(segment_points(table.keys(), eps));
  while (model.levels.back().size() > 1) {
    const auto& below = model.levels.back();
    std::vector<Key> first_keys(below.size());
    std::transform(below.begin(), below.end(), first_keys.begin(), [](const PgmSegment& s) { return s.first_key; });
    model.levels.push_back(segment_points(first_keys, eps));
  }
  return model;
}

PredictedInterval pgm_predict(const PgmModel& model, Key query) noexcept {
  const auto& bottom = model.levels.front();
  const std::size_t seg = model.bottom_segment(query);
  const auto begin = static_cast<std::int64_t>(bottom[seg].intercept);
  const auto end = seg + 1 < bottom.size() ? static_cast<std::int64_t>(bottom[seg + 1].intercept)
                                           : static_cast<std::int64_t>(model.n);
  const auto pred = detail::clamp_rank(detail::round_half_up(bottom[seg].evaluate(query)), begin, end);
  return detail::make_interval(pred, model.eps, model.eps, model.n);
}

}  // namespace lsi
