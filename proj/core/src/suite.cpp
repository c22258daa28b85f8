#include "lsi/suite.hpp"

#include <atomic>
#include <functional>
#include <thread>
#include <variant>

namespace lsi {

DatasetSpec synthetic_dataset(unsigned exp) {
  DatasetSpec spec;
  spec.id = "synthetic-2^" + std::to_string(exp);
  spec.synthetic_n = std::size_t{1} << exp;
  return spec;
}

std::vector<ModelSpec> ModelGrid::expand() const {
  std::vector<ModelSpec> out;
  for (auto b : rmi_branching) out.push_back({ModelKind::rmi, b, 0, 0});
  for (auto e : pgm_eps) out.push_back({ModelKind::pgm, 0, e, 0});
  for (auto e : rs_eps) {
    for (auto r : rs_radix_bits) out.push_back({ModelKind::rs, 0, e, r});
  }
  if (linear) out.push_back({ModelKind::linear, 0, 0, 0});
  return out;
}

ModelGrid ModelGrid::reference_grid() {
  ModelGrid grid;
  for (std::size_t b = std::size_t{1} << 6; b <= (std::size_t{1} << 18); b *= 4) grid.rmi_branching.push_back(b);
  grid.pgm_eps = {4, 16, 64, 256, 1024};
  grid.rs_eps = {4, 16, 64, 256, 1024};
  grid.rs_radix_bits = {12, 16, 20};
  return grid;
}

std::size_t configuration_count(const SuiteConfig& config) {
  const std::size_t per_dataset =
      config.routines.size() * config.prefetch_modes.size() +
      config.models.expand().size() * config.learned_routines.size() * config.prefetch_modes.size();
  return per_dataset * config.datasets.size();
}

namespace {

using Outcome = std::variant<BenchResult, SuiteFailure>;

struct Job {
  std::string config_id;
  std::function<BenchResult()> run;
};

struct PreparedDataset {
  SortedTable table;
  std::vector<Key> queries;
};

PreparedDataset prepare(const DatasetSpec& spec, const SuiteConfig& config) {
  PreparedDataset out;
  if (spec.synthetic()) {
    out.table = gen_synthetic(spec.synthetic_n, config.seed, config.budget);
  } else {
    out.table = read_table(spec.path);
    if (spec.resample_to) out.table = resample_cdf(out.table, *spec.resample_to);
  }
  if (!spec.queries_path.empty()) {
    out.queries = read_queries(spec.queries_path);
  } else if (spec.synthetic()) {
    out.queries = gen_synthetic_queries(out.table, config.query_count, config.seed).queries;
  } else {
    out.queries = gen_mixed_queries(out.table, config.query_count, config.seed).queries;
  }
  return out;
}

std::vector<Outcome> execute(const std::vector<Job>& jobs, bool parallel) {
  std::vector<Outcome> outcomes(jobs.size());
  const auto run_one = [&](std::size_t i) {
    try {
      outcomes[i] = jobs[i].run();
    } catch (const Error& e) {
      outcomes[i] = SuiteFailure{jobs[i].config_id, e.what(), e.kind()};
    } catch (const std::exception& e) {
      outcomes[i] = SuiteFailure{jobs[i].config_id, e.what(), ErrorKind::internal};
    }
  };
  if (!parallel || jobs.size() < 2) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(jobs.size())));
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) run_one(i);
    });
  }
  pool.clear();
  return outcomes;
}

}  // namespace

SuiteOutput run_suite(const SuiteConfig& config) {
  SuiteOutput output;
  const auto model_specs = config.models.expand();

  for (const auto& dataset : config.datasets) {
    // Config ids are known up front so that a dataset failure can be charged
    // to every configuration it would have produced.
    std::vector<std::string> ids;
    for (auto routine : config.routines) {
      for (auto pf : config.prefetch_modes) {
        ids.push_back(make_config_id(dataset.id, routine, "none", make_params(routine, config.k, ""), pf));
      }
    }
    for (const auto& spec : model_specs) {
      for (auto routine : config.learned_routines) {
        for (auto pf : config.prefetch_modes) {
          ids.push_back(make_config_id(dataset.id, routine, std::string(model_kind_name(spec.kind)),
                                       make_params(routine, config.k, spec.params()), pf));
        }
      }
    }

    PreparedDataset data;
    try {
      data = prepare(dataset, config);
    } catch (const Error& e) {
      for (auto& id : ids) output.failures.push_back({id, e.what(), e.kind()});
      continue;
    } catch (const std::exception& e) {
      for (auto& id : ids) output.failures.push_back({id, e.what(), ErrorKind::internal});
      continue;
    }

    std::vector<Job> jobs;
    std::size_t next_id = 0;
    const auto base = [&](Routine routine, Prefetch pf) {
      BatchConfig bc;
      bc.dataset = dataset.id;
      bc.routine = routine;
      bc.k = config.k;
      bc.prefetch = pf;
      bc.repetitions = config.repetitions;
      bc.eytzinger = config.eytzinger;
      return bc;
    };

    for (auto routine : config.routines) {
      for (auto pf : config.prefetch_modes) {
        jobs.push_back({ids[next_id++], [&, bc = base(routine, pf)] { return run_batch(data.table, data.queries, bc); }});
      }
    }
    for (const auto& spec : model_specs) {
      std::shared_ptr<const Model> model;
      std::string training_error;
      ErrorKind training_kind = ErrorKind::internal;
      try {
        model = std::make_shared<const Model>(train(data.table, spec));
      } catch (const Error& e) {
        training_error = e.what();
        training_kind = e.kind();
      } catch (const std::exception& e) {
        training_error = e.what();
      }
      for (auto routine : config.learned_routines) {
        for (auto pf : config.prefetch_modes) {
          const std::string& id = ids[next_id++];
          if (!model) {
            jobs.push_back({id, [msg = training_error, training_kind]() -> BenchResult {
                              throw Error(training_kind, msg);
                            }});
            continue;
          }
          BatchConfig bc = base(routine, pf);
          bc.model = model;
          bc.model_params = spec.params();
          jobs.push_back({id, [&, bc] { return run_batch(data.table, data.queries, bc); }});
        }
      }
    }

    for (auto& outcome : execute(jobs, config.parallel_correctness_only)) {
      if (auto* r = std::get_if<BenchResult>(&outcome)) {
        output.results.push_back(std::move(*r));
      } else {
        output.failures.push_back(std::get<SuiteFailure>(std::move(outcome)));
      }
    }
  }
  return output;
}

}  // namespace lsi
