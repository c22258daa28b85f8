#include "lsi/data.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <string>

#include "lsi/errors.hpp"
#include "lsi/rng.hpp"

namespace lsi {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

void LevelConfig::validate() const {
  if (!(0 < l1 && l1 < l2 && l2 < l3 && l3 < l4)) {
    throw ConfigError("level sizes must be strictly increasing and positive: L1=" + std::to_string(l1) +
                      " L2=" + std::to_string(l2) + " L3=" + std::to_string(l3) + " L4=" + std::to_string(l4));
  }
}

std::optional<std::size_t> LevelConfig::size_of(std::string_view level) const noexcept {
  if (level == "L1") return l1;
  if (level == "L2") return l2;
  if (level == "L3") return l3;
  if (level == "L4") return l4;
  return std::nullopt;
}

SortedTable gen_synthetic(std::size_t n, std::uint64_t /*seed*/, MemoryBudget budget) {
  if (n == 0) throw UsageError("synthetic table size must be >= 1");
  if (n > budget.max_bytes / sizeof(Key) || n > (UINT64_MAX - 1) / 2) {
    throw SizingError("synthetic table of " + std::to_string(n) + " keys exceeds the memory budget of " +
                      std::to_string(budget.max_bytes) + " bytes");
  }
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = 2 * static_cast<Key>(i) + 1;
  return SortedTable(std::move(keys));
}

QueryBatch gen_synthetic_queries(const SortedTable& table, std::size_t total, std::uint64_t seed) {
  if (total % 2 != 0) throw UsageError("synthetic query count must be even, got " + std::to_string(total));
  const std::size_t n = table.size();
  if (n == 0 || table.min_key() != 1 || table.max_key() != 2 * static_cast<Key>(n) - 1) {
    throw UsageError("synthetic queries need a table of the odd keys 1, 3, ..., 2n-1");
  }
  Rng rng(seed);
  QueryBatch batch;
  batch.seed = seed;
  batch.queries.reserve(total);
  for (std::size_t i = 0; i < total / 2; ++i) batch.queries.push_back(table[rng.below(n)]);
  // Even keys in [0, 2n+2) are 2j for j in [0, n].
  for (std::size_t i = 0; i < total / 2; ++i) batch.queries.push_back(2 * rng.below(n + 1));
  batch.present = total / 2;
  batch.absent = total / 2;
  rng.shuffle(std::span<Key>(batch.queries));
  return batch;
}

SortedTable resample_cdf(const SortedTable& source, std::size_t n) {
  const std::size_t big = source.size();
  if (n < 2 || n > big) {
    throw UsageError("resample size must lie in [2, " + std::to_string(big) + "], got " + std::to_string(n));
  }
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = source[static_cast<std::size_t>(static_cast<u128>(i) * (big - 1) / (n - 1))];
  }
  return SortedTable(std::move(keys));
}

QueryBatch gen_mixed_queries(const SortedTable& table, std::size_t count, std::uint64_t seed) {
  if (count % 2 != 0) throw UsageError("mixed query count must be even, got " + std::to_string(count));
  if (table.empty()) throw UsageError("mixed queries need a non-empty table");
  const auto keys = table.keys();
  const auto is_member = [&](Key k) { return std::binary_search(keys.begin(), keys.end(), k); };

  Rng rng(seed);
  QueryBatch batch;
  batch.seed = seed;
  batch.queries.reserve(count);
  for (std::size_t i = 0; i < count / 2; ++i) batch.queries.push_back(table[rng.below(table.size())]);
  for (std::size_t i = 0; i < count / 2; ++i) {
    unsigned attempt = 0;
    Key candidate;
    do {
      if (attempt++ == kAbsentRejectionLimit) {
        throw GenerationError("could not draw a non-member key from [" + std::to_string(table.min_key()) + ", " +
                              std::to_string(table.max_key()) + "] within " +
                              std::to_string(kAbsentRejectionLimit) + " attempts");
      }
      candidate = rng.between(table.min_key(), table.max_key());
    } while (is_member(candidate));
    batch.queries.push_back(candidate);
  }
  batch.present = count / 2;
  batch.absent = count / 2;
  rng.shuffle(std::span<Key>(batch.queries));
  return batch;
}

namespace {

void put_u64(std::ofstream& out, std::uint64_t v) {
  std::array<unsigned char, 8> b{};
  for (std::size_t i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), 8);
}

std::uint64_t from_le(const unsigned char* b) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

std::vector<Key> read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(LoadError::Reason::io, "cannot open key file " + path.string());
  std::error_code ec;
  const auto file_size = std::filesystem::file_size(path, ec);
  if (ec) throw LoadError(LoadError::Reason::io, "cannot stat key file " + path.string());

  std::array<unsigned char, 8> header{};
  if (!in.read(reinterpret_cast<char*>(header.data()), 8)) {
    throw LoadError(LoadError::Reason::truncated, path.string() + ": missing count header");
  }
  const std::uint64_t count = from_le(header.data());
  if (count > (file_size - 8) / 8) {
    throw LoadError(LoadError::Reason::truncated, path.string() + ": header promises " + std::to_string(count) +
                                                      " keys, file holds " + std::to_string((file_size - 8) / 8));
  }
  std::vector<unsigned char> raw(count * 8);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw LoadError(LoadError::Reason::truncated, path.string() + ": short read");
  }
  std::vector<Key> keys(count);
  for (std::size_t i = 0; i < count; ++i) keys[i] = from_le(raw.data() + 8 * i);
  return keys;
}

void write_key_file(const std::filesystem::path& path, std::span<const Key> keys) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError(LoadError::Reason::io, "cannot open " + path.string() + " for writing");
  put_u64(out, keys.size());
  for (Key k : keys) put_u64(out, k);
  if (!out) throw LoadError(LoadError::Reason::io, "write failed: " + path.string());
}

}  // namespace

SortedTable read_table(const std::filesystem::path& path) {
  auto keys = read_key_file(path);
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i - 1] == keys[i]) {
      throw LoadError(LoadError::Reason::duplicate,
                      path.string() + ": duplicate key " + std::to_string(keys[i]) + " at rank " + std::to_string(i));
    }
    if (keys[i - 1] > keys[i]) {
      throw LoadError(LoadError::Reason::unsorted, path.string() + ": keys not ascending at rank " + std::to_string(i));
    }
  }
  return SortedTable(std::move(keys));
}

void write_table(const std::filesystem::path& path, const SortedTable& table) { write_key_file(path, table.keys()); }

std::vector<Key> read_queries(const std::filesystem::path& path) { return read_key_file(path); }

void write_queries(const std::filesystem::path& path, std::span<const Key> queries) { write_key_file(path, queries); }

}  // namespace lsi
