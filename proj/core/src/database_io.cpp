#include <zlib.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ridgeclass/error.hpp"
#include "ridgeclass/features.hpp"

namespace ridgeclass {

namespace {

constexpr std::string_view kMagic = "RGC1";

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::IoError, "database payload truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string serialize_database(const FeatureDatabase& db) {
  const std::size_t dim = db.config.layout.total();
  Writer w;
  w.u32(static_cast<std::uint32_t>(db.config.k_level));
  w.str(db.config.wavelet);
  w.str(db.config.boundary);
  w.u32(static_cast<std::uint32_t>(db.config.image_rows));
  w.u32(static_cast<std::uint32_t>(db.config.image_cols));
  w.u32(static_cast<std::uint32_t>(db.config.layout.spectrum_len));
  w.u32(static_cast<std::uint32_t>(db.config.layout.energy_len));
  w.u64(db.entries.size());
  for (const auto& e : db.entries) {
    if (e.feature.values.size() != dim || !(e.feature.layout == db.config.layout)) {
      throw Error(ErrorCode::LengthMismatch, "entry '" + e.source_id +
                                                 "' does not match the database layout");
    }
    w.u8(static_cast<std::uint8_t>(e.gender));
    w.u8(static_cast<std::uint8_t>(e.finger_no));
    w.str(e.source_id);
    for (const double v : e.feature.values) w.f64(v);
  }
  const std::uint32_t crc = crc32_of(w.bytes());

  std::string out(kMagic);
  out += w.bytes();
  Writer trailer;
  trailer.u32(crc);
  out += trailer.bytes();
  return out;
}

FeatureDatabase deserialize_database(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    throw Error(ErrorCode::FormatVersionMismatch, "missing RGC1 magic");
  }
  if (bytes.size() < kMagic.size() + 4) throw Error(ErrorCode::IoError, "database file truncated");
  const auto payload = bytes.substr(kMagic.size(), bytes.size() - kMagic.size() - 4);
  const std::uint32_t stored = Reader(bytes.substr(bytes.size() - 4)).u32();
  if (crc32_of(payload) != stored) {
    throw Error(ErrorCode::ChecksumMismatch, "database payload CRC-32 mismatch");
  }

  Reader r(payload);
  FeatureDatabase db;
  db.config.k_level = static_cast<int>(r.u32());
  db.config.wavelet = r.str();
  db.config.boundary = r.str();
  db.config.image_rows = r.u32();
  db.config.image_cols = r.u32();
  db.config.layout.spectrum_len = r.u32();
  db.config.layout.energy_len = r.u32();
  const std::uint64_t count = r.u64();
  const std::size_t dim = db.config.layout.total();
  // Each entry needs at least 6 bytes plus its values; reject absurd counts
  // before reserving.
  if (count > payload.size() / (6 + 8 * dim)) {
    throw Error(ErrorCode::IoError, "entry count exceeds payload size");
  }
  db.entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    LabeledFeature e;
    const auto gender = r.u8();
    if (gender > 1) throw Error(ErrorCode::IoError, "bad gender byte in entry " + std::to_string(i));
    e.gender = static_cast<Gender>(gender);
    e.finger_no = r.u8();
    if (e.finger_no < 1 || e.finger_no > 10) {
      throw Error(ErrorCode::IoError, "bad finger byte in entry " + std::to_string(i));
    }
    e.source_id = r.str();
    e.feature.layout = db.config.layout;
    e.feature.values.resize(dim);
    for (auto& v : e.feature.values) v = r.f64();
    db.entries.push_back(std::move(e));
  }
  if (!r.done()) throw Error(ErrorCode::IoError, "trailing bytes after last entry");
  return db;
}

void save_database(const FeatureDatabase& db, const std::filesystem::path& path) {
  const auto bytes = serialize_database(db);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

FeatureDatabase load_database(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return deserialize_database(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace ridgeclass
