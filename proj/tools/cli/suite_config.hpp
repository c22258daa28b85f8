#pragma once

// Declarative sweep configs (JSON). Relative paths resolve against the
// config file's directory. Unknown keys are rejected.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lsi/data.hpp"
#include "lsi/suite.hpp"

namespace lsi::cli {

LevelConfig parse_machine_config(const nlohmann::json& j);
LevelConfig load_machine_config(const std::filesystem::path& path);

SuiteConfig parse_suite_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
SuiteConfig load_suite_config(const std::filesystem::path& path);

/// Fully explicit form: dataset ranges expanded, levels resolved to sizes,
/// paths absolute. Parsing it back yields the same suite.
nlohmann::json to_json(const SuiteConfig& config);

}  // namespace lsi::cli
