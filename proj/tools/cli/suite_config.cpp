#include "cli/suite_config.hpp"

#include <fstream>
#include <set>

#include "lsi/errors.hpp"

namespace lsi::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(LoadError::Reason::io, "cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : std::filesystem::absolute(base / path).lexically_normal();
}

Routine routine_from(const json& j) {
  const auto name = j.get<std::string>();
  const auto r = parse_routine(name);
  if (!r) throw ConfigError("unknown routine '" + name + "'");
  return *r;
}

std::vector<Routine> routines_from(const json& j, const char* key, std::vector<Routine> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<Routine> out;
  for (const auto& r : j.at(key)) out.push_back(routine_from(r));
  return out;
}

ModelGrid grid_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "reference") return ModelGrid::reference_grid();
    throw ConfigError("models: the only named grid is \"reference\"");
  }
  reject_unknown(j, {"rmi_branching", "pgm_eps", "rs_eps", "rs_radix_bits", "linear"}, "models");
  ModelGrid g;
  g.rmi_branching = get_or(j, "rmi_branching", g.rmi_branching);
  g.pgm_eps = get_or(j, "pgm_eps", g.pgm_eps);
  g.rs_eps = get_or(j, "rs_eps", g.rs_eps);
  g.rs_radix_bits = get_or(j, "rs_radix_bits", g.rs_radix_bits);
  g.linear = get_or(j, "linear", g.linear);
  if (!g.rs_eps.empty() && g.rs_radix_bits.empty()) throw ConfigError("models: rs_eps given without rs_radix_bits");
  return g;
}

std::size_t resample_size(const json& j, const LevelConfig& levels) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (auto n = levels.size_of(name)) return *n;
    throw ConfigError("unknown cache level '" + name + "' (expected L1..L4)");
  }
  throw ConfigError("resample: expected a size or a level name");
}

void add_datasets(const json& j, const std::filesystem::path& base, const LevelConfig& levels,
                  std::vector<DatasetSpec>& out) {
  reject_unknown(j, {"synthetic_exp", "synthetic_exp_range", "synthetic_n", "id", "path", "resample", "queries"},
                 "dataset");
  if (j.contains("synthetic_exp_range")) {
    const auto range = get_or<std::vector<unsigned>>(j, "synthetic_exp_range", {});
    if (range.size() != 2 || range[0] > range[1]) throw ConfigError("synthetic_exp_range must be [from, to]");
    for (unsigned e = range[0]; e <= range[1]; ++e) out.push_back(synthetic_dataset(e));
    return;
  }
  DatasetSpec spec;
  if (j.contains("synthetic_exp")) {
    spec = synthetic_dataset(get_or<unsigned>(j, "synthetic_exp", 0));
  } else if (j.contains("synthetic_n")) {
    spec.synthetic_n = get_or<std::size_t>(j, "synthetic_n", 0);
    if (spec.synthetic_n == 0) throw ConfigError("synthetic_n must be >= 1");
    spec.id = "synthetic-" + std::to_string(spec.synthetic_n);
  } else if (j.contains("path")) {
    spec.path = resolve(base, get_or<std::string>(j, "path", ""));
    spec.id = spec.path.stem().string();
    if (j.contains("resample")) spec.resample_to = resample_size(j.at("resample"), levels);
  } else {
    throw ConfigError("dataset needs one of synthetic_exp, synthetic_exp_range, synthetic_n, path");
  }
  if (j.contains("queries")) spec.queries_path = resolve(base, get_or<std::string>(j, "queries", ""));
  spec.id = get_or(j, "id", spec.id);
  out.push_back(std::move(spec));
}

}  // namespace

LevelConfig parse_machine_config(const json& j) {
  reject_unknown(j, {"name", "levels"}, "machine config");
  LevelConfig lv;
  if (j.contains("levels")) {
    const auto& l = j.at("levels");
    reject_unknown(l, {"L1", "L2", "L3", "L4"}, "levels");
    lv.l1 = get_or(l, "L1", lv.l1);
    lv.l2 = get_or(l, "L2", lv.l2);
    lv.l3 = get_or(l, "L3", lv.l3);
    lv.l4 = get_or(l, "L4", lv.l4);
  }
  lv.validate();
  return lv;
}

LevelConfig load_machine_config(const std::filesystem::path& path) { return parse_machine_config(read_json(path)); }

SuiteConfig parse_suite_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j,
                 {"datasets", "routines", "learned_routines", "models", "prefetch", "k", "repetitions", "query_count",
                  "seed", "machine", "eytzinger", "memory_budget_bytes", "parallel_correctness_only"},
                 "suite config");
  SuiteConfig cfg;
  const LevelConfig levels =
      j.contains("machine") ? load_machine_config(resolve(base_dir, get_or<std::string>(j, "machine", "")))
                            : LevelConfig{};

  if (j.contains("datasets")) {
    for (const auto& d : j.at("datasets")) add_datasets(d, base_dir, levels, cfg.datasets);
  }
  cfg.routines = routines_from(j, "routines", cfg.routines);
  cfg.learned_routines = routines_from(j, "learned_routines", cfg.learned_routines);
  for (auto r : cfg.learned_routines) {
    if (!uses_sorted_layout(r)) throw ConfigError("U-EL cannot be a learned final stage: it needs its own layout");
  }
  if (j.contains("models")) cfg.models = grid_from(j.at("models"));
  if (j.contains("prefetch")) {
    cfg.prefetch_modes.clear();
    for (const auto& p : get_or<std::vector<std::string>>(j, "prefetch", {})) {
      if (p != "on" && p != "off") throw ConfigError("prefetch modes are \"on\" and \"off\", got '" + p + "'");
      cfg.prefetch_modes.push_back(p == "on" ? Prefetch::on : Prefetch::off);
    }
  }
  cfg.k = get_or(j, "k", cfg.k);
  check_kary(cfg.k);
  cfg.repetitions = get_or(j, "repetitions", cfg.repetitions);
  if (cfg.repetitions == 0) throw ConfigError("repetitions must be >= 1");
  cfg.query_count = get_or(j, "query_count", cfg.query_count);
  cfg.seed = get_or(j, "seed", cfg.seed);
  cfg.parallel_correctness_only = get_or(j, "parallel_correctness_only", cfg.parallel_correctness_only);
  cfg.budget.max_bytes = get_or(j, "memory_budget_bytes", cfg.budget.max_bytes);
  if (j.contains("eytzinger")) {
    const auto& e = j.at("eytzinger");
    reject_unknown(e, {"multiplier", "offset"}, "eytzinger");
    cfg.eytzinger.multiplier = get_or(e, "multiplier", cfg.eytzinger.multiplier);
    cfg.eytzinger.offset = get_or(e, "offset", cfg.eytzinger.offset);
  }
  return cfg;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  return parse_suite_config(read_json(path), std::filesystem::absolute(path).parent_path());
}

json to_json(const SuiteConfig& c) {
  json datasets = json::array();
  for (const auto& d : c.datasets) {
    json e{{"id", d.id}};
    if (d.synthetic()) {
      e["synthetic_n"] = d.synthetic_n;
    } else {
      e["path"] = std::filesystem::absolute(d.path).string();
      if (d.resample_to) e["resample"] = *d.resample_to;
    }
    if (!d.queries_path.empty()) e["queries"] = std::filesystem::absolute(d.queries_path).string();
    datasets.push_back(std::move(e));
  }
  const auto names = [](const std::vector<Routine>& rs) {
    std::vector<std::string> out;
    for (auto r : rs) out.emplace_back(routine_name(r));
    return out;
  };
  std::vector<std::string> prefetch;
  for (auto p : c.prefetch_modes) prefetch.emplace_back(p == Prefetch::on ? "on" : "off");
  return json{
      {"datasets", datasets},
      {"routines", names(c.routines)},
      {"learned_routines", names(c.learned_routines)},
      {"models",
       {{"rmi_branching", c.models.rmi_branching},
        {"pgm_eps", c.models.pgm_eps},
        {"rs_eps", c.models.rs_eps},
        {"rs_radix_bits", c.models.rs_radix_bits},
        {"linear", c.models.linear}}},
      {"prefetch", prefetch},
      {"k", c.k},
      {"repetitions", c.repetitions},
      {"query_count", c.query_count},
      {"seed", c.seed},
      {"eytzinger", {{"multiplier", c.eytzinger.multiplier}, {"offset", c.eytzinger.offset}}},
      {"memory_budget_bytes", c.budget.max_bytes},
      {"parallel_correctness_only", c.parallel_correctness_only},
  };
}

}  // namespace lsi::cli
