#include "lsi/bench.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace lsi {

std::string make_params(Routine routine, unsigned k, const std::string& model_params) {
  std::string out;
  if (routine == Routine::standard_kary || routine == Routine::uniform_kary) out = "k=" + std::to_string(k);
  if (!model_params.empty()) {
    if (!out.empty()) out += ';';
    out += model_params;
  }
  return out;
}

std::string make_config_id(const std::string& dataset, Routine routine, const std::string& model,
                           const std::string& params, Prefetch prefetch) {
  return dataset + "|" + std::string(routine_name(routine)) + "|" + model + "|" + params + "|" +
         (prefetch == Prefetch::on ? "pf" : "nopf");
}

std::string BenchResult::config_id() const { return make_config_id(dataset, routine, model, params, prefetch); }

double median(std::vector<double> samples) {
  if (samples.empty()) throw UsageError("median of an empty sample");
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return 0.5 * (samples[mid - 1] + samples[mid]);
}

namespace {

template <class Fn>
void finish(BenchResult& result, std::span<const Key> queries, unsigned reps, Fn&& fn) {
  const auto passes = time_passes(queries, reps, fn);
  result.checksum = passes.checksum;
  const double per_query = median(passes.pass_ns) / static_cast<double>(queries.size());
  // A pass can round to 0 ns on very small batches with coarse clocks.
  result.mean_ns_per_query = std::max(per_query, 1e-3);
}

}  // namespace

BenchResult run_batch(const SortedTable& table, std::span<const Key> queries, const BatchConfig& config) {
  if (queries.empty()) throw UsageError("run_batch: empty query batch");
  if (table.empty()) throw UsageError("run_batch: empty table");
  if (config.repetitions == 0) throw ConfigError("run_batch: repetitions must be >= 1");

  BenchResult result;
  result.dataset = config.dataset;
  result.n = table.size();
  result.routine = config.routine;
  result.prefetch = supports_prefetch(config.routine) ? config.prefetch : Prefetch::off;
  result.reps = config.repetitions;
  result.params = make_params(config.routine, config.k, config.model_params);

  const Key* keys = table.data();
  const std::size_t n = table.size();

  if (config.model) {
    const Model& model = *config.model;
    if (config.routine == Routine::eytzinger) {
      throw UsageError("U-EL cannot be used as the final stage of a learned index: it needs its own layout");
    }
    if (table_size(model) != n) throw UsageError("run_batch: model was trained on a different table");
    result.model = std::string(model_kind_name(kind_of(model)));
    with_sorted_kernel(config.routine, result.prefetch, config.k, [&](auto kern) {
      std::visit(
          [&](const auto& m) {
            finish(result, queries, config.repetitions,
                   [&](Key q) { return detail::learned_lookup_with(m, keys, n, q, kern); });
          },
          model);
    });
    result.reduction_factor = reduction_factor(model, table, queries);
    const auto stats = interval_stats(model, queries);
    result.interval_mean = stats.mean;
    result.interval_stddev = stats.stddev;
    return result;
  }

  if (config.routine == Routine::eytzinger) {
    const EytzingerTable etable = build_eytzinger(table);
    const Key* layout = etable.layout().data();
    const auto params = config.eytzinger;
    if (result.prefetch == Prefetch::on) {
      finish(result, queries, config.repetitions,
             [&](Key q) { return kernel::eytzinger_lower_bound<true>(layout, n, q, params); });
    } else {
      finish(result, queries, config.repetitions,
             [&](Key q) { return kernel::eytzinger_lower_bound<false>(layout, n, q, params); });
    }
    // Timed passes fold layout indices; report the fold of sorted ranks.
    std::uint64_t ranks = 0;
    for (Key q : queries) {
      ranks ^= layout_index_to_rank(etable, kernel::eytzinger_lower_bound<false>(layout, n, q, params));
    }
    result.checksum = ranks;
    return result;
  }

  with_sorted_kernel(config.routine, result.prefetch, config.k, [&](auto kern) {
    finish(result, queries, config.repetitions, [&](Key q) { return kern(keys, q, 0, n); });
  });
  return result;
}

std::uint64_t oracle_checksum(const SortedTable& table, std::span<const Key> queries) {
  std::uint64_t acc = 0;
  for (Key q : queries) acc ^= oracle_lower_bound(table, q, table.full_range());
  return acc;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& text, std::size_t line_no, const char* column) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("csv line " + std::to_string(line_no) + ": bad " + column + " '" + text + "'");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& text, std::size_t line_no, const char* column) {
  if (text.empty()) return std::nullopt;
  return parse_number<double>(text, line_no, column);
}

void check_field(const std::string& value, const char* column) {
  if (value.find_first_of(",\n\r") != std::string::npos) {
    throw UsageError(std::string("csv: ") + column + " must not contain commas or newlines: '" + value + "'");
  }
}

}  // namespace

void write_csv(std::ostream& out, std::span<const BenchResult> results) {
  out << kCsvHeader << '\n';
  for (const auto& r : results) {
    check_field(r.dataset, "dataset");
    check_field(r.params, "params");
    check_field(r.model, "model");
    out << r.dataset << ',' << r.n << ',' << routine_name(r.routine) << ',' << r.model << ',' << r.params << ','
        << (r.prefetch == Prefetch::on ? 1 : 0) << ',' << r.reps << ',' << format_double(r.mean_ns_per_query) << ','
        << r.checksum << ',' << format_optional(r.reduction_factor) << ',' << format_optional(r.interval_mean)
        << ',' << format_optional(r.interval_stddev) << '\n';
  }
}

std::vector<BenchResult> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("csv: unexpected header '" + line + "'");

  std::vector<BenchResult> results;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) {
      throw ParseError("csv line " + std::to_string(line_no) + ": expected 12 fields, got " + std::to_string(f.size()));
    }
    BenchResult r;
    r.dataset = f[0];
    r.n = parse_number<std::size_t>(f[1], line_no, "n");
    const auto routine = parse_routine(f[2]);
    if (!routine) throw ParseError("csv line " + std::to_string(line_no) + ": unknown routine '" + f[2] + "'");
    r.routine = *routine;
    r.model = f[3];
    r.params = f[4];
    if (f[5] != "0" && f[5] != "1") throw ParseError("csv line " + std::to_string(line_no) + ": bad prefetch flag");
    r.prefetch = f[5] == "1" ? Prefetch::on : Prefetch::off;
    r.reps = parse_number<unsigned>(f[6], line_no, "reps");
    r.mean_ns_per_query = parse_number<double>(f[7], line_no, "mean_ns_per_query");
    r.checksum = parse_number<std::uint64_t>(f[8], line_no, "checksum");
    r.reduction_factor = parse_optional(f[9], line_no, "reduction_factor");
    r.interval_mean = parse_optional(f[10], line_no, "interval_mean");
    r.interval_stddev = parse_optional(f[11], line_no, "interval_stddev");
    results.push_back(std::move(r));
  }
  return results;
}

void emit_csv(std::span<const BenchResult> results, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw LoadError(LoadError::Reason::io, "cannot open " + path.string() + " for writing");
  write_csv(out, results);
  if (!out) throw LoadError(LoadError::Reason::io, "write failed: " + path.string());
}

std::vector<BenchResult> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(LoadError::Reason::io, "cannot open " + path.string());
  return parse_csv(in);
}

std::vector<std::filesystem::path> emit_plot_data(std::span<const BenchResult> results,
                                                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<Routine, std::vector<const BenchResult*>> by_routine;
  for (const auto& r : results) by_routine[r.routine].push_back(&r);

  std::vector<std::filesystem::path> written;
  for (auto& [routine, rows] : by_routine) {
    std::stable_sort(rows.begin(), rows.end(), [](const BenchResult* a, const BenchResult* b) {
      return std::tie(a->model, a->params, a->prefetch, a->n, a->dataset) <
             std::tie(b->model, b->params, b->prefetch, b->n, b->dataset);
    });
    const auto path = dir / (std::string(routine_name(routine)) + ".dat");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw LoadError(LoadError::Reason::io, "cannot open " + path.string() + " for writing");
    out << "# " << routine_name(routine) << ": mean query time (ns) against number of elements in the table\n";
    out << "# n mean_ns_per_query prefetch model params dataset\n";
    for (const auto* r : rows) {
      out << r->n << ' ' << format_double(r->mean_ns_per_query) << ' ' << (r->prefetch == Prefetch::on ? 1 : 0) << ' '
          << r->model << ' ' << (r->params.empty() ? "-" : r->params) << ' ' << r->dataset << '\n';
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace lsi
