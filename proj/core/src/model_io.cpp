#include "lsi/model_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "lsi/errors.hpp"

namespace lsi {

namespace {

constexpr std::array<char, 4> kMagic{'L', 'S', 'I', 'M'};

// Guards allocation sizes read from untrusted files.
constexpr std::uint64_t kMaxArrayLength = std::uint64_t{1} << 40;

class Writer {
 public:
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::byte*>(data);
    out_.insert(out_.end(), p, p + size);
  }
  template <class T>
  void le(T value) {
    static_assert(std::is_unsigned_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::byte>((value >> (8 * i)) & 0xFF));
  }
  void u8(std::uint8_t v) { le(v); }
  void u16(std::uint16_t v) { le(v); }
  void u32(std::uint32_t v) { le(v); }
  void u64(std::uint64_t v) { le(v); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }

  std::vector<std::byte> take() { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  template <class T>
  T le() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(in_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return v;
  }
  std::uint8_t u8() { return le<std::uint8_t>(); }
  std::uint16_t u16() { return le<std::uint16_t>(); }
  std::uint32_t u32() { return le<std::uint32_t>(); }
  std::uint64_t u64() { return le<std::uint64_t>(); }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }

  std::uint64_t length() {
    const std::uint64_t len = u64();
    if (len > kMaxArrayLength) throw LoadError(LoadError::Reason::corrupt, "model blob: implausible array length");
    return len;
  }

  void span(void* dst, std::size_t size) {
    need(size);
    std::memcpy(dst, in_.data() + pos_, size);
    pos_ += size;
  }

  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t size) const {
    if (in_.size() - pos_ < size) throw LoadError(LoadError::Reason::truncated, "model blob: truncated");
  }

  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

void put_submodel(Writer& w, const LinearSubmodel& s) {
  w.u64(s.origin);
  w.f64(s.slope);
  w.f64(s.intercept);
}

LinearSubmodel get_submodel(Reader& r) {
  LinearSubmodel s;
  s.origin = r.u64();
  s.slope = r.f64();
  s.intercept = r.f64();
  return s;
}

void write_payload(Writer& w, const LinearCdfModel& m) {
  w.u64(m.n);
  w.u64(m.eps);
  w.u64(m.origin);
  w.f64(m.slope);
  w.f64(m.intercept);
  w.f64(m.max_error);
}

void write_payload(Writer& w, const RmiModel& m) {
  w.u64(m.n);
  w.u64(m.branching);
  put_submodel(w, m.root);
  for (std::size_t l = 0; l < m.branching; ++l) {
    put_submodel(w, m.leaves[l]);
    w.u64(m.leaf_begin[l]);
    w.u64(m.err_lo[l]);
    w.u64(m.err_hi[l]);
  }
}

void write_payload(Writer& w, const PgmModel& m) {
  w.u64(m.n);
  w.u64(m.eps);
  w.u64(m.levels.size());
  for (const auto& level : m.levels) {
    w.u64(level.size());
    for (const auto& s : level) {
      w.u64(s.first_key);
      w.f64(s.slope);
      w.f64(s.intercept);
    }
  }
}

void write_payload(Writer& w, const RsModel& m) {
  w.u64(m.n);
  w.u64(m.eps);
  w.u32(m.radix_bits);
  w.u32(m.shift);
  w.u64(m.min_key);
  w.u64(m.max_key);
  w.u64(m.radix_table.size());
  for (auto v : m.radix_table) w.u32(v);
  w.u64(m.spline.size());
  for (const auto& p : m.spline) {
    w.u64(p.key);
    w.u64(p.rank);
  }
}

[[noreturn]] void corrupt(const std::string& what) {
  throw LoadError(LoadError::Reason::corrupt, "model blob: " + what);
}

LinearCdfModel read_linear(Reader& r) {
  LinearCdfModel m;
  m.n = r.u64();
  m.eps = r.u64();
  m.origin = r.u64();
  m.slope = r.f64();
  m.intercept = r.f64();
  m.max_error = r.f64();
  if (m.n == 0) corrupt("linear model over an empty table");
  return m;
}

RmiModel read_rmi(Reader& r) {
  RmiModel m;
  m.n = r.u64();
  m.branching = r.length();
  if (m.n == 0 || m.branching == 0) corrupt("RMI with zero keys or zero leaves");
  m.root = get_submodel(r);
  m.leaves.resize(m.branching);
  m.leaf_begin.resize(m.branching + 1);
  m.err_lo.resize(m.branching);
  m.err_hi.resize(m.branching);
  for (std::size_t l = 0; l < m.branching; ++l) {
    m.leaves[l] = get_submodel(r);
    m.leaf_begin[l] = r.u64();
    m.err_lo[l] = r.u64();
    m.err_hi[l] = r.u64();
    if (m.leaf_begin[l] > m.n || (l > 0 && m.leaf_begin[l] < m.leaf_begin[l - 1])) corrupt("RMI leaf spans");
  }
  m.leaf_begin[m.branching] = m.n;
  return m;
}

PgmModel read_pgm(Reader& r) {
  PgmModel m;
  m.n = r.u64();
  m.eps = r.u64();
  const auto height = r.length();
  if (m.n == 0 || m.eps == 0 || height == 0) corrupt("PGM header");
  m.levels.resize(height);
  for (auto& level : m.levels) {
    const auto count = r.length();
    if (count == 0) corrupt("empty PGM level");
    level.resize(count);
    for (auto& s : level) {
      s.first_key = r.u64();
      s.slope = r.f64();
      s.intercept = r.f64();
    }
  }
  if (m.levels.back().size() != 1) corrupt("PGM top level must hold one segment");
  return m;
}

RsModel read_rs(Reader& r) {
  RsModel m;
  m.n = r.u64();
  m.eps = r.u64();
  m.radix_bits = r.u32();
  m.shift = r.u32();
  m.min_key = r.u64();
  m.max_key = r.u64();
  if (m.n == 0 || m.radix_bits < kMinRadixBits || m.radix_bits > kMaxRadixBits || m.shift >= 64) {
    corrupt("RadixSpline header");
  }
  const auto slots = r.length();
  if (slots != (std::uint64_t{1} << m.radix_bits) + 1) corrupt("radix table size");
  m.radix_table.resize(slots);
  for (auto& v : m.radix_table) v = r.u32();
  const auto points = r.length();
  if (points == 0) corrupt("empty spline");
  m.spline.resize(points);
  for (auto& p : m.spline) {
    p.key = r.u64();
    p.rank = r.u64();
  }
  for (std::size_t i = 0; i < m.radix_table.size(); ++i) {
    if (m.radix_table[i] > points || (i > 0 && m.radix_table[i] < m.radix_table[i - 1])) corrupt("radix table");
  }
  if (m.radix_table.back() != points) corrupt("radix table sentinel");
  for (std::size_t i = 1; i < m.spline.size(); ++i) {
    if (m.spline[i].key <= m.spline[i - 1].key) corrupt("spline keys not ascending");
  }
  return m;
}

}  // namespace

std::vector<std::byte> serialize_model(const Model& model) {
  Writer w;
  w.bytes(kMagic.data(), kMagic.size());
  w.u16(kModelFormatMajor);
  w.u16(kModelFormatMinor);
  w.u8(static_cast<std::uint8_t>(kind_of(model)));
  w.u8(0);
  w.u8(0);
  w.u8(0);
  std::visit([&](const auto& m) { write_payload(w, m); }, model);
  return w.take();
}

Model deserialize_model(std::span<const std::byte> blob) {
  Reader r(blob);
  std::array<char, 4> magic{};
  r.span(magic.data(), magic.size());
  if (magic != kMagic) throw LoadError(LoadError::Reason::bad_magic, "model blob: bad magic");
  const auto major = r.u16();
  r.u16();  // minor
  if (major != kModelFormatMajor) {
    throw LoadError(LoadError::Reason::bad_version,
                    "model blob: unsupported format version " + std::to_string(major));
  }
  const auto kind = r.u8();
  r.u8();
  r.u8();
  r.u8();
  Model model;
  switch (static_cast<ModelKind>(kind)) {
    case ModelKind::linear: model = read_linear(r); break;
    case ModelKind::rmi: model = read_rmi(r); break;
    case ModelKind::pgm: model = read_pgm(r); break;
    case ModelKind::rs: model = read_rs(r); break;
    default: corrupt("unknown model kind " + std::to_string(kind));
  }
  if (!r.done()) corrupt("trailing bytes");
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  const auto blob = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError(LoadError::Reason::io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
  if (!out) throw LoadError(LoadError::Reason::io, "write failed: " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(LoadError::Reason::io, "cannot open model file " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_model(std::as_bytes(std::span<const char>(raw)));
}

}  // namespace lsi
