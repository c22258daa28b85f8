#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsi/errors.hpp"
#include "lsi/eytzinger.hpp"
#include "lsi/model.hpp"
#include "lsi/sorted_search.hpp"

namespace lsi {

/// One timed configuration. A null `model` means a stand-alone search over
/// the whole table.
struct BatchConfig {
  std::string dataset = "adhoc";
  Routine routine = Routine::standard_bs;
  unsigned k = kDefaultKary;
  Prefetch prefetch = Prefetch::off;
  std::shared_ptr<const Model> model;
  std::string model_params;  // recorded verbatim in the result
  unsigned repetitions = 3;
  EytzingerParams eytzinger;
};

struct BenchResult {
  std::string dataset;
  std::size_t n = 0;
  Routine routine = Routine::standard_bs;
  std::string model = "none";  // model kind name, or "none"
  std::string params;          // e.g. "k=3;eps=64"
  Prefetch prefetch = Prefetch::off;
  unsigned reps = 0;
  double mean_ns_per_query = 0;
  std::uint64_t checksum = 0;  // xor of every returned rank
  std::optional<double> reduction_factor;
  std::optional<double> interval_mean;
  std::optional<double> interval_stddev;

  /// Stable identifier used for tie-breaking and failure records.
  std::string config_id() const;

  friend bool operator==(const BenchResult&, const BenchResult&) = default;
};

/// Builds the params column: "k=<k>" for k-ary routines joined with the model's params.
std::string make_params(Routine routine, unsigned k, const std::string& model_params);
std::string make_config_id(const std::string& dataset, Routine routine, const std::string& model,
                           const std::string& params, Prefetch prefetch);

/// Median of the samples (mean of the two middle values for even counts).
/// Throws UsageError on an empty input.
double median(std::vector<double> samples);

struct TimedPasses {
  std::vector<double> pass_ns;
  std::uint64_t checksum = 0;
};

/// One untimed warmup pass, then `reps` timed passes of `fn(query)` over the
/// whole batch. Every pass folds the returned values with xor; a pass whose
/// fold differs from the warmup throws InternalError.
template <class Fn>
TimedPasses time_passes(std::span<const Key> queries, unsigned reps, Fn&& fn) {
  const auto fold = [&] {
    std::uint64_t acc = 0;
    for (Key q : queries) acc ^= static_cast<std::uint64_t>(fn(q));
    return acc;
  };
  TimedPasses out;
  out.checksum = fold();
  out.pass_ns.reserve(reps);
  for (unsigned i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t acc = fold();
    const auto stop = std::chrono::steady_clock::now();
    if (acc != out.checksum) {
      throw InternalError("checksum changed between passes: the search routine is nondeterministic");
    }
    out.pass_ns.push_back(static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
  }
  return out;
}

/// Times `config` over `queries`. Throws UsageError for an empty batch, a
/// model trained on a different table, or U-EL combined with a model.
BenchResult run_batch(const SortedTable& table, std::span<const Key> queries, const BatchConfig& config);

/// xor fold of oracle ranks over the batch (linear scan per query; for tests).
std::uint64_t oracle_checksum(const SortedTable& table, std::span<const Key> queries);

// CSV columns, in order:
// dataset,n,routine,model,params,prefetch,reps,mean_ns_per_query,checksum,
// reduction_factor,interval_mean,interval_stddev
// Optional fields are left empty when no model is involved.

inline constexpr std::string_view kCsvHeader =
    "dataset,n,routine,model,params,prefetch,reps,mean_ns_per_query,checksum,reduction_factor,interval_mean,"
    "interval_stddev";

void write_csv(std::ostream& out, std::span<const BenchResult> results);
/// Throws ParseError on a malformed header or row.
std::vector<BenchResult> parse_csv(std::istream& in);

void emit_csv(std::span<const BenchResult> results, const std::filesystem::path& path);
std::vector<BenchResult> read_csv(const std::filesystem::path& path);

/// Writes one whitespace-separated series file per routine ("<routine>.dat")
/// into `dir` with columns: n mean_ns_per_query prefetch model params dataset.
/// Returns the files written.
std::vector<std::filesystem::path> emit_plot_data(std::span<const BenchResult> results,
                                                  const std::filesystem::path& dir);

}  // namespace lsi
