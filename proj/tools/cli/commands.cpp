#include "cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "cli/suite_config.hpp"
#include "lsi/bench.hpp"
#include "lsi/data.hpp"
#include "lsi/errors.hpp"
#include "lsi/model_io.hpp"
#include "lsi/report.hpp"
#include "lsi/suite.hpp"

namespace lsi::cli {

namespace {

int exit_code_for(ErrorKind kind) { return kind == ErrorKind::internal ? kExitInternal : kExitUsage; }

bool looks_synthetic(const SortedTable& t) {
  return !t.empty() && t.min_key() == 1 && t.max_key() == 2 * static_cast<Key>(t.size()) - 1;
}

void print_model_summary(std::ostream& out, const Model& model) {
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        out << "kind=" << model_kind_name(kind_of(model)) << " n=" << m.n;
        if constexpr (std::is_same_v<M, LinearCdfModel>) {
          out << " eps=" << m.eps << " max_error=" << std::setprecision(6) << m.max_error
              << " slope=" << std::setprecision(10) << m.slope << " intercept=" << m.intercept_at_zero() << "\n";
        } else if constexpr (std::is_same_v<M, RmiModel>) {
          std::size_t empty = 0;
          for (std::size_t l = 0; l < m.leaves.size(); ++l) empty += m.leaf_begin[l] == m.leaf_begin[l + 1];
          const auto max_lo = *std::max_element(m.err_lo.begin(), m.err_lo.end());
          const auto max_hi = *std::max_element(m.err_hi.begin(), m.err_hi.end());
          const double mean_width =
              std::accumulate(m.err_lo.begin(), m.err_lo.end(), 0.0) / static_cast<double>(m.err_lo.size()) +
              std::accumulate(m.err_hi.begin(), m.err_hi.end(), 0.0) / static_cast<double>(m.err_hi.size()) + 1.0;
          out << " branching=" << m.branching << " empty_leaves=" << empty << " max_err_lo=" << max_lo
              << " max_err_hi=" << max_hi << " mean_leaf_interval=" << std::setprecision(4) << mean_width << "\n";
        } else if constexpr (std::is_same_v<M, PgmModel>) {
          out << " eps=" << m.eps << " levels=" << m.height() << " segments=";
          for (std::size_t l = 0; l < m.levels.size(); ++l) out << (l ? "," : "") << m.levels[l].size();
          out << "\n";
        } else {
          out << " eps=" << m.eps << " radix_bits=" << m.radix_bits << " spline_points=" << m.spline.size() << "\n";
        }
      },
      model);
}

void print_result(std::ostream& out, const BenchResult& r) {
  out << r.config_id() << " n=" << r.n << " ns/query=" << std::setprecision(4) << r.mean_ns_per_query
      << " checksum=" << r.checksum;
  if (r.interval_mean) out << " interval_mean=" << *r.interval_mean << " reduction=" << *r.reduction_factor;
  out << "\n";
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p += ".config.json";
  return p;
}

struct GenerateArgs {
  std::optional<unsigned> exp;
  std::optional<std::size_t> n;
  std::optional<std::string> level;
  std::string table;
  std::string machine;
  std::string out;
  std::size_t count = 1'000'000;
  std::uint64_t seed = 42;
};

struct TrainArgs {
  std::string table;
  std::string kind;
  std::size_t branching = ModelSpec{}.branching;
  std::uint64_t eps = ModelSpec{}.eps;
  unsigned radix_bits = ModelSpec{}.radix_bits;
  std::string out;
};

struct BenchArgs {
  std::string table;
  std::string queries;
  std::string routine = "S-BS";
  std::string model;
  std::string dataset;
  std::string csv;
  std::string plot;
  unsigned k = kDefaultKary;
  bool prefetch = false;
  unsigned reps = 3;
  std::size_t count = 1'000'000;
  std::uint64_t seed = 42;
};

struct SweepArgs {
  std::string config;
  std::string csv;
  std::string plot;
};

int do_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const SuiteConfig cfg = load_suite_config(a.config);
  out << "running " << configuration_count(cfg) << " configurations over " << cfg.datasets.size() << " datasets\n";
  const auto result = run_suite(cfg);
  const std::filesystem::path csv(a.csv);
  if (csv.has_parent_path()) std::filesystem::create_directories(csv.parent_path());
  emit_csv(result.results, csv);
  std::ofstream(sidecar_path(csv)) << to_json(cfg).dump(2) << "\n";
  const std::filesystem::path plot = a.plot.empty() ? csv.parent_path() / "plot" : std::filesystem::path(a.plot);
  const auto curves = emit_plot_data(result.results, plot);
  out << "wrote " << result.results.size() << " rows to " << csv.string() << ", " << curves.size() << " curves to "
      << plot.string() << "\n";
  int code = kExitOk;
  for (const auto& f : result.failures) {
    err << "failed: " << f.config_id << ": " << f.message << "\n";
    // Any internal failure wins over configuration or data failures.
    if (f.kind == ErrorKind::internal) {
      code = kExitInternal;
    } else if (code == kExitOk) {
      code = kExitUsage;
    }
  }
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sorted-array search routines and learned index models: data generation, training, benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lsi 1.0.0");

  std::function<void()> action;
  int action_code = kExitOk;

  // generate
  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "Write key or query files");
  gen->require_subcommand(1);

  auto* syn = gen->add_subcommand("synthetic", "Odd keys 1, 3, ..., 2n-1");
  auto* syn_exp = syn->add_option("--exp", g.exp, "n = 2^exp")->check(CLI::Range(0u, 40u));
  syn->add_option("--n", g.n, "number of keys")->excludes(syn_exp);
  syn->add_option("--out,-o", g.out, "output key file")->required();
  syn->callback([&] {
    action = [&] {
      if (!g.exp && !g.n) throw UsageError("generate synthetic: give --exp or --n");
      const std::size_t n = g.exp ? std::size_t{1} << *g.exp : *g.n;
      write_table(g.out, gen_synthetic(n, g.seed));
      out << "wrote " << n << " keys to " << g.out << "\n";
    };
  });

  auto* qry = gen->add_subcommand("queries", "Half present odd keys, half absent even keys, for a synthetic table");
  qry->add_option("--table", g.table, "synthetic key file")->required()->check(CLI::ExistingFile);
  qry->add_option("--count", g.count, "number of queries (even)");
  qry->add_option("--seed", g.seed, "random seed");
  qry->add_option("--out,-o", g.out, "output query file")->required();
  qry->callback([&] {
    action = [&] {
      const auto batch = gen_synthetic_queries(read_table(g.table), g.count, g.seed);
      write_queries(g.out, batch.queries);
      out << "wrote " << batch.queries.size() << " queries (" << batch.present << " present, " << batch.absent
          << " absent) to " << g.out << "\n";
    };
  });

  auto* mix = gen->add_subcommand("mixed", "Half present, half absent queries for any table");
  mix->add_option("--table", g.table, "key file")->required()->check(CLI::ExistingFile);
  mix->add_option("--count", g.count, "number of queries (even)");
  mix->add_option("--seed", g.seed, "random seed");
  mix->add_option("--out,-o", g.out, "output query file")->required();
  mix->callback([&] {
    action = [&] {
      const auto batch = gen_mixed_queries(read_table(g.table), g.count, g.seed);
      write_queries(g.out, batch.queries);
      out << "wrote " << batch.queries.size() << " queries (" << batch.present << " present, " << batch.absent
          << " absent) to " << g.out << "\n";
    };
  });

  auto* res = gen->add_subcommand("resample", "Shrink a key file to n keys keeping its CDF shape");
  res->add_option("--table", g.table, "source key file")->required()->check(CLI::ExistingFile);
  auto* res_n = res->add_option("--n", g.n, "target size");
  res->add_option("--level", g.level, "target size by cache level L1..L4")->excludes(res_n);
  res->add_option("--machine", g.machine, "machine config with level sizes")->check(CLI::ExistingFile);
  res->add_option("--out,-o", g.out, "output key file")->required();
  res->callback([&] {
    action = [&] {
      std::size_t n = 0;
      if (g.n) {
        n = *g.n;
      } else if (g.level) {
        const LevelConfig levels = g.machine.empty() ? LevelConfig{} : load_machine_config(g.machine);
        const auto size = levels.size_of(*g.level);
        if (!size) throw UsageError("unknown cache level '" + *g.level + "' (expected L1..L4)");
        n = *size;
      } else {
        throw UsageError("generate resample: give --n or --level");
      }
      write_table(g.out, resample_cdf(read_table(g.table), n));
      out << "wrote " << n << " keys to " << g.out << "\n";
    };
  });

  // train
  TrainArgs t;
  auto* train_cmd = app.add_subcommand("train", "Fit one model to a key file and save it");
  train_cmd->add_option("--table", t.table, "key file")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--kind", t.kind, "linear | rmi | pgm | rs")->required();
  train_cmd->add_option("--branching,-B", t.branching, "RMI leaf count");
  train_cmd->add_option("--eps", t.eps, "PGM / RadixSpline error bound");
  train_cmd->add_option("--radix-bits,-r", t.radix_bits, "RadixSpline radix table bits");
  train_cmd->add_option("--out,-o", t.out, "model file");
  train_cmd->callback([&] {
    action = [&] {
      const auto kind = parse_model_kind(t.kind);
      if (!kind) throw UsageError("unknown model kind '" + t.kind + "' (expected linear, rmi, pgm, rs)");
      const Model model = train(read_table(t.table), ModelSpec{*kind, t.branching, t.eps, t.radix_bits});
      print_model_summary(out, model);
      if (!t.out.empty()) {
        save_model(t.out, model);
        out << "saved " << t.out << "\n";
      }
    };
  });

  // bench
  BenchArgs b;
  auto* bench_cmd = app.add_subcommand("bench", "Time one configuration");
  bench_cmd->add_option("--table", b.table, "key file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--queries", b.queries, "query file (generated when omitted)");
  bench_cmd->add_option("--routine", b.routine, "S-BS | U-BS | lower_bound | S-KS | U-KS | U-EL");
  bench_cmd->add_option("--k", b.k, "k for the k-ary routines");
  bench_cmd->add_flag("--prefetch", b.prefetch, "enable software prefetching");
  bench_cmd->add_option("--model", b.model, "saved model for a learned lookup");
  bench_cmd->add_option("--reps", b.reps, "timed passes");
  bench_cmd->add_option("--count", b.count, "generated query count");
  bench_cmd->add_option("--seed", b.seed, "generated query seed");
  bench_cmd->add_option("--dataset", b.dataset, "dataset id recorded in the CSV");
  bench_cmd->add_option("--csv", b.csv, "CSV output (overwritten)");
  bench_cmd->add_option("--plot", b.plot, "plot data directory");
  bench_cmd->callback([&] {
    action = [&] {
      const auto routine = parse_routine(b.routine);
      if (!routine) throw UsageError("unknown routine '" + b.routine + "'");
      BatchConfig bc;
      bc.routine = *routine;
      bc.k = b.k;
      bc.prefetch = b.prefetch ? Prefetch::on : Prefetch::off;
      bc.repetitions = b.reps;
      bc.dataset = b.dataset.empty() ? std::filesystem::path(b.table).stem().string() : b.dataset;
      if (!b.model.empty()) {
        if (*routine == Routine::eytzinger) {
          throw UsageError("U-EL cannot be used with a learned model: it searches its own layout, not the sorted table");
        }
        bc.model = std::make_shared<const Model>(load_model(b.model));
        bc.model_params = spec_of(*bc.model).params();
      }
      const SortedTable table = read_table(b.table);
      std::vector<Key> queries;
      if (!b.queries.empty()) {
        queries = read_queries(b.queries);
      } else if (looks_synthetic(table)) {
        queries = gen_synthetic_queries(table, b.count, b.seed).queries;
      } else {
        queries = gen_mixed_queries(table, b.count, b.seed).queries;
      }
      const std::vector<BenchResult> rows{run_batch(table, queries, bc)};
      print_result(out, rows.front());
      if (!b.csv.empty()) emit_csv(rows, b.csv);
      if (!b.plot.empty()) emit_plot_data(rows, b.plot);
    };
  });

  // sweep
  SweepArgs s;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every configuration of a sweep config");
  sweep_cmd->add_option("--config,-c", s.config, "sweep config (JSON)")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--csv", s.csv, "results CSV; the resolved config is written next to it")->required();
  sweep_cmd->add_option("--plot", s.plot, "plot data directory (default: <csv dir>/plot)");
  sweep_cmd->callback([&] { action = [&] { action_code = do_sweep(s, out, err); }; });

  // report
  std::string report_csv;
  auto* report_cmd = app.add_subcommand("report", "Best configuration per dataset and model class");
  report_cmd->add_option("--csv", report_csv, "results CSV")->required()->check(CLI::ExistingFile);
  report_cmd->callback([&] { action = [&] { out << render_markdown(build_report(read_csv(report_csv))); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
    return action_code;
  } catch (const Error& e) {
    err << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace lsi::cli
