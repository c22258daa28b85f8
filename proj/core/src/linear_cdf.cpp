#include "lsi/linear_cdf.hpp"

#include <cmath>

#include "lsi/detail/model_math.hpp"
#include "lsi/errors.hpp"

namespace lsi {

namespace {

// Absorbs floating-point noise so an exactly linear table gets eps = 0.
constexpr double kEpsSlack = 1e-9;

}  // namespace

double LinearCdfModel::evaluate(Key key) const noexcept {
  return intercept + slope * detail::key_offset(key, origin);
}

LinearCdfModel fit_linear_cdf(const SortedTable& table, bool permissive) {
  const std::size_t n = table.size();
  if (n == 0 || (n == 1 && !permissive)) {
    throw TrainingError("linear CDF fit needs at least 2 keys, got " + std::to_string(n));
  }
  LinearCdfModel model;
  model.n = n;
  model.origin = table.min_key();
  const auto fit = detail::least_squares(table.keys(), model.origin, 0.0);
  model.slope = fit.slope;
  model.intercept = fit.intercept;

  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(model.evaluate(table[i]) - static_cast<double>(i)));
  }
  model.max_error = worst;
  model.eps = static_cast<std::uint64_t>(std::max(0.0, std::ceil(worst - kEpsSlack)));
  return model;
}

PredictedInterval predict_interval(const LinearCdfModel& model, Key query) noexcept {
  const auto pred = detail::round_half_up(model.evaluate(query));
  return detail::make_interval(pred, model.eps, model.eps, model.n);
}

}  // namespace lsi
