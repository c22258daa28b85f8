#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lsi/bench.hpp"
#include "lsi/data.hpp"
#include "lsi/errors.hpp"

namespace lsi {

/// A table to benchmark: either the synthetic odd-key table of
/// `synthetic_n` keys, or a key file optionally resampled to `resample_to`.
struct DatasetSpec {
  std::string id;
  std::size_t synthetic_n = 0;
  std::filesystem::path path;
  std::optional<std::size_t> resample_to;
  /// Explicit query file; otherwise queries are generated from the seed.
  std::filesystem::path queries_path;

  bool synthetic() const noexcept { return synthetic_n > 0; }
};

/// Synthetic dataset with 2^exp keys, id "synthetic-2^<exp>".
DatasetSpec synthetic_dataset(unsigned exp);

struct ModelGrid {
  std::vector<std::size_t> rmi_branching;
  std::vector<std::uint64_t> pgm_eps;
  std::vector<std::uint64_t> rs_eps;
  std::vector<unsigned> rs_radix_bits;
  bool linear = false;

  /// RMI, then PGM, then RS (eps-major), then the linear model.
  std::vector<ModelSpec> expand() const;

  /// RMI B in {2^6 .. 2^18 by x4}, PGM eps in {4, 16, 64, 256, 1024},
  /// RS eps in {4 .. 1024 by x4} x radix bits {12, 16, 20}.
  static ModelGrid reference_grid();
};

struct SuiteConfig {
  std::vector<DatasetSpec> datasets;
  /// Stand-alone sweep (any routine, U-EL included).
  std::vector<Routine> routines;
  /// Final-stage routines paired with every model in `models`.
  std::vector<Routine> learned_routines{Routine::standard_bs, Routine::uniform_bs, Routine::standard_kary};
  ModelGrid models;
  std::vector<Prefetch> prefetch_modes{Prefetch::off};
  unsigned k = kDefaultKary;
  unsigned repetitions = 3;
  std::size_t query_count = 2'000'000;
  std::uint64_t seed = 42;
  /// Runs configurations on several threads. Timings are then meaningless;
  /// use only to check results.
  bool parallel_correctness_only = false;
  EytzingerParams eytzinger;
  MemoryBudget budget;
};

struct SuiteFailure {
  std::string config_id;
  std::string message;
  ErrorKind kind = ErrorKind::internal;
};

struct SuiteOutput {
  std::vector<BenchResult> results;
  std::vector<SuiteFailure> failures;
};

/// Size of the configuration product the suite will attempt.
std::size_t configuration_count(const SuiteConfig& config);

/// Cartesian sweep in a fixed order: per dataset, stand-alone routines x
/// prefetch modes, then models x learned routines x prefetch modes.
/// Per-configuration errors are recorded in `failures`, never thrown.
SuiteOutput run_suite(const SuiteConfig& config);

}  // namespace lsi
