#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "lsi/model.hpp"

namespace lsi {

// Binary model blob, little-endian throughout (see docs/model_format.md):
//   magic "LSIM" | u16 major | u16 minor | u8 kind | 3 reserved zero bytes | payload
// Readers accept any minor version of their own major version.

inline constexpr std::uint16_t kModelFormatMajor = 1;
inline constexpr std::uint16_t kModelFormatMinor = 0;

std::vector<std::byte> serialize_model(const Model& model);

/// Throws LoadError on bad magic, unsupported major version, truncation or
/// inconsistent payload.
Model deserialize_model(std::span<const std::byte> blob);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace lsi
