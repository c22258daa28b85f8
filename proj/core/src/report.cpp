#include "lsi/report.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace lsi {

namespace {

bool better(const BenchResult& a, const BenchResult& b) {
  if (a.mean_ns_per_query != b.mean_ns_per_query) return a.mean_ns_per_query < b.mean_ns_per_query;
  const double ia = a.interval_mean.value_or(std::numeric_limits<double>::infinity());
  const double ib = b.interval_mean.value_or(std::numeric_limits<double>::infinity());
  if (ia != ib) return ia < ib;
  return a.config_id() < b.config_id();
}

const BenchResult* best_of(std::span<const BenchResult> rows, std::string_view dataset, std::string_view model_class,
                           const Routine* routine = nullptr) {
  const BenchResult* best = nullptr;
  for (const auto& r : rows) {
    if (r.dataset != dataset || r.model != model_class) continue;
    if (routine && r.routine != *routine) continue;
    if (!best || better(r, *best)) best = &r;
  }
  return best;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

}  // namespace

BenchResult select_best(std::span<const BenchResult> results, std::string_view dataset,
                        std::string_view model_class) {
  const BenchResult* best = best_of(results, dataset, model_class);
  if (!best) {
    throw SelectionError("no results for dataset '" + std::string(dataset) + "' and model class '" +
                         std::string(model_class) + "'");
  }
  return *best;
}

Report build_report(std::span<const BenchResult> results) {
  Report report;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : results) {
    const std::pair<std::string, std::string> key{r.dataset, r.model};
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
  }

  for (const auto& [dataset, model_class] : order) {
    ReportGroup group{dataset, model_class, select_best(results, dataset, model_class), {}};
    for (int i = 0; i <= static_cast<int>(Routine::eytzinger); ++i) {
      const auto routine = static_cast<Routine>(i);
      if (const auto* best = best_of(results, dataset, model_class, &routine)) group.per_routine.push_back(*best);
    }

    const std::string winner(routine_name(group.best.routine));
    if (model_class == "none") {
      const bool has_el = std::any_of(group.per_routine.begin(), group.per_routine.end(),
                                      [](const BenchResult& r) { return r.routine == Routine::eytzinger; });
      if (has_el && group.per_routine.size() > 1) {
        const bool agrees = group.best.routine == Routine::eytzinger;
        report.annotations.push_back(dataset + " stand-alone: fastest routine is " + winner +
                                     (agrees ? " (agrees: U-EL expected fastest without a model)"
                                             : " (differs: U-EL was expected fastest without a model)"));
      }
    } else {
      const bool has_ks = std::any_of(group.per_routine.begin(), group.per_routine.end(),
                                      [](const BenchResult& r) { return r.routine == Routine::standard_kary; });
      if (has_ks && group.per_routine.size() > 1) {
        const bool agrees = group.best.routine == Routine::standard_kary;
        report.annotations.push_back(dataset + " " + model_class + ": best final stage is " + winner +
                                     (agrees ? " (agrees: S-KS expected best final stage)"
                                             : " (differs: S-KS was expected best final stage)"));
      }
    }
    report.groups.push_back(std::move(group));
  }
  return report;
}

std::string render_markdown(const Report& report) {
  std::ostringstream out;
  out << "| dataset | model | best routine | params | prefetch | ns/query | interval mean |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& g : report.groups) {
    const auto& b = g.best;
    out << "| " << g.dataset << " | " << g.model_class << " | " << routine_name(b.routine) << " | "
        << (b.params.empty() ? "-" : b.params) << " | " << (b.prefetch == Prefetch::on ? "on" : "off") << " | "
        << fmt(b.mean_ns_per_query) << " | " << (b.interval_mean ? fmt(*b.interval_mean) : "-") << " |\n";
  }
  for (const auto& g : report.groups) {
    if (g.per_routine.size() < 2) continue;
    out << "\n" << g.dataset << " / " << g.model_class << " per routine:";
    for (const auto& r : g.per_routine) out << "  " << routine_name(r.routine) << "=" << fmt(r.mean_ns_per_query);
    out << "\n";
  }
  if (!report.annotations.empty()) {
    out << "\nNotes (hardware-dependent, informational):\n";
    for (const auto& a : report.annotations) out << "- " << a << "\n";
  }
  return out.str();
}

}  // namespace lsi
