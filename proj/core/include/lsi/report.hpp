#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lsi/bench.hpp"

namespace lsi {

/// Fastest row for (dataset, model class); model class "none" selects the
/// stand-alone rows. Ties go to the smaller interval mean, then to the
/// lexicographically smaller config id. Throws SelectionError when no row matches.
BenchResult select_best(std::span<const BenchResult> results, std::string_view dataset,
                        std::string_view model_class);

struct ReportGroup {
  std::string dataset;
  std::string model_class;
  BenchResult best;
  /// Fastest row per routine inside the group, in routine order.
  std::vector<BenchResult> per_routine;
};

struct Report {
  std::vector<ReportGroup> groups;
  /// Observations compared with the published findings; never a failure.
  std::vector<std::string> annotations;
};

/// Groups by (dataset, model class) in first-appearance order.
Report build_report(std::span<const BenchResult> results);
std::string render_markdown(const Report& report);

}  // namespace lsi
