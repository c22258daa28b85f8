#pragma once

#include <cstddef>
#include <cstdint>

// Non-binding read hints. Compiles to nothing where the builtin is missing.

namespace lsi {

#if defined(__GNUC__) || defined(__clang__)

/// Hint with no temporal locality, as used by the binary-search routines.
inline void prefetch_nta(const void* address) noexcept { __builtin_prefetch(address, 0, 0); }

/// Hint with full temporal locality.
inline void prefetch_keep(const void* address) noexcept { __builtin_prefetch(address, 0, 3); }

#else

inline void prefetch_nta(const void*) noexcept {}
inline void prefetch_keep(const void*) noexcept {}

#endif

/// Prefetch `base + byte_offset` without forming an out-of-bounds pointer;
/// the address may lie past the end of the array.
inline void prefetch_keep_at(const void* base, std::size_t byte_offset) noexcept {
  prefetch_keep(reinterpret_cast<const void*>(reinterpret_cast<std::uintptr_t>(base) + byte_offset));
}

}  // namespace lsi
