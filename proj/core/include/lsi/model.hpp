#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "lsi/linear_cdf.hpp"
#include "lsi/pgm.hpp"
#include "lsi/radix_spline.hpp"
#include "lsi/rmi.hpp"
#include "lsi/sorted_search.hpp"

namespace lsi {

using Model = std::variant<LinearCdfModel, RmiModel, PgmModel, RsModel>;

enum class ModelKind : std::uint8_t { linear = 1, rmi = 2, pgm = 3, rs = 4 };

std::string_view model_kind_name(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept;
ModelKind kind_of(const Model& model) noexcept;

/// Training recipe for one model instance.
struct ModelSpec {
  ModelKind kind = ModelKind::linear;
  std::size_t branching = 1024;  // RMI
  std::uint64_t eps = 64;        // PGM, RadixSpline
  unsigned radix_bits = 16;      // RadixSpline

  /// Compact parameter string, e.g. "B=1024", "eps=64", "eps=64;r=16".
  std::string params() const;
};

Model train(const SortedTable& table, const ModelSpec& spec);

/// Recipe that reproduces `model` (linear models report their fitted eps).
ModelSpec spec_of(const Model& model);

std::size_t table_size(const Model& model) noexcept;

inline PredictedInterval predict_interval(const RmiModel& m, Key q) noexcept { return rmi_predict(m, q); }
inline PredictedInterval predict_interval(const PgmModel& m, Key q) noexcept { return pgm_predict(m, q); }
inline PredictedInterval predict_interval(const RsModel& m, Key q) noexcept { return rs_predict(m, q); }
PredictedInterval predict_interval(const Model& model, Key query) noexcept;

namespace detail {

/// Searches the predicted interval with `kern`, then repairs a miss at either
/// interval edge. Models guarantee containment for member keys only; an
/// absent key's lower bound can fall just outside the interval.
template <class M, class Kernel>
Rank learned_lookup_with(const M& model, const Key* keys, std::size_t n, Key query, Kernel&& kern) {
  const PredictedInterval iv = predict_interval(model, query);
  Rank r = kern(keys, query, iv.lo, iv.hi);
  if (r == iv.hi && iv.hi < n) {
    r = kern(keys, query, iv.hi, n);
  } else if (r == iv.lo && iv.lo > 0 && keys[iv.lo - 1] >= query) {
    r = kern(keys, query, 0, iv.lo);
  }
  return r;
}

}  // namespace detail

/// Lower-bound rank of `query` in `table`, searching the model's predicted
/// interval with a sorted-layout routine. `model` must be trained on `table`.
/// Throws UsageError for Routine::eytzinger or a model/table size mismatch.
Rank learned_lookup(const Model& model, const SortedTable& table, Key query, Routine routine,
                    unsigned k = kDefaultKary, Prefetch prefetch = Prefetch::off);

/// Mean over queries of 1 - (interval length / n). Throws UsageError on an empty batch.
double reduction_factor(const Model& model, const SortedTable& table, std::span<const Key> queries);

struct IntervalStats {
  double mean = 0;
  double stddev = 0;  // population
};

/// Mean and population standard deviation of hi - lo. Throws UsageError on an empty batch.
IntervalStats interval_stats(const Model& model, std::span<const Key> queries);

}  // namespace lsi
