#include "lsi/model.hpp"

#include <array>
#include <cmath>

#include "lsi/errors.hpp"

namespace lsi {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 4> kKindNames{{
    {ModelKind::linear, "linear"},
    {ModelKind::rmi, "rmi"},
    {ModelKind::pgm, "pgm"},
    {ModelKind::rs, "rs"},
}};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view model_kind_name(ModelKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

ModelKind kind_of(const Model& model) noexcept {
  return std::visit(overloaded{
                        [](const LinearCdfModel&) { return ModelKind::linear; },
                        [](const RmiModel&) { return ModelKind::rmi; },
                        [](const PgmModel&) { return ModelKind::pgm; },
                        [](const RsModel&) { return ModelKind::rs; },
                    },
                    model);
}

std::string ModelSpec::params() const {
  switch (kind) {
    case ModelKind::linear: return "";
    case ModelKind::rmi: return "B=" + std::to_string(branching);
    case ModelKind::pgm: return "eps=" + std::to_string(eps);
    case ModelKind::rs: return "eps=" + std::to_string(eps) + ";r=" + std::to_string(radix_bits);
  }
  return "";
}

Model train(const SortedTable& table, const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::linear: return fit_linear_cdf(table);
    case ModelKind::rmi: return build_rmi(table, spec.branching);
    case ModelKind::pgm: return build_pgm(table, spec.eps);
    case ModelKind::rs: return build_rs(table, spec.eps, spec.radix_bits);
  }
  throw ConfigError("unknown model kind");
}

ModelSpec spec_of(const Model& model) {
  return std::visit(overloaded{
                        [](const LinearCdfModel& m) { return ModelSpec{ModelKind::linear, 1, m.eps, 0}; },
                        [](const RmiModel& m) { return ModelSpec{ModelKind::rmi, m.branching, 0, 0}; },
                        [](const PgmModel& m) { return ModelSpec{ModelKind::pgm, 0, m.eps, 0}; },
                        [](const RsModel& m) { return ModelSpec{ModelKind::rs, 0, m.eps, m.radix_bits}; },
                    },
                    model);
}

std::size_t table_size(const Model& model) noexcept {
  return std::visit([](const auto& m) { return m.n; }, model);
}

PredictedInterval predict_interval(const Model& model, Key query) noexcept {
  return std::visit([query](const auto& m) { return predict_interval(m, query); }, model);
}

Rank learned_lookup(const Model& model, const SortedTable& table, Key query, Routine routine, unsigned k,
                    Prefetch prefetch) {
  if (routine == Routine::eytzinger) {
    throw UsageError("U-EL cannot be used as the final stage of a learned index: it needs its own layout");
  }
  if (table_size(model) != table.size()) {
    throw UsageError("model was trained on a table of " + std::to_string(table_size(model)) +
                     " keys, lookup table has " + std::to_string(table.size()));
  }
  return with_sorted_kernel(routine, prefetch, k, [&](auto kern) {
    return std::visit(
        [&](const auto& m) { return detail::learned_lookup_with(m, table.data(), table.size(), query, kern); },
        model);
  });
}

double reduction_factor(const Model& model, const SortedTable& table, std::span<const Key> queries) {
  if (queries.empty()) throw UsageError("reduction_factor: empty query set");
  if (table.empty()) throw UsageError("reduction_factor: empty table");
  const double n = static_cast<double>(table.size());
  double sum = 0;
  for (Key q : queries) sum += 1.0 - static_cast<double>(predict_interval(model, q).size()) / n;
  return sum / static_cast<double>(queries.size());
}

IntervalStats interval_stats(const Model& model, std::span<const Key> queries) {
  if (queries.empty()) throw UsageError("interval_stats: empty query batch");
  long double sum = 0;
  for (Key q : queries) sum += predict_interval(model, q).size();
  const long double mean = sum / queries.size();
  long double sq = 0;
  for (Key q : queries) {
    const long double d = predict_interval(model, q).size() - mean;
    sq += d * d;
  }
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(sq / queries.size()))};
}

}  // namespace lsi
