#include "ridgeclass/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ridgeclass/error.hpp"

namespace ridgeclass {

namespace fs = std::filesystem;

GrayImage::GrayImage(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  }
  if (pixels_.size() != rows_ * cols_) {
    throw Error(ErrorCode::InvalidArgument, "pixel count does not match rows*cols");
  }
}

GrayImage::GrayImage(std::size_t rows, std::size_t cols, std::uint8_t fill)
    : GrayImage(rows, cols, std::vector<std::uint8_t>(rows * cols, fill)) {}

Matrix GrayImage::to_matrix() const {
  std::vector<double> data(pixels_.begin(), pixels_.end());
  return Matrix(rows_, cols_, std::move(data));
}

Region full_region(const GrayImage& image) noexcept {
  return {0, 0, image.rows(), image.cols()};
}

Region compose(const Region& outer, const Region& inner) noexcept {
  return {outer.top + inner.top, outer.left + inner.left, inner.height, inner.width};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Header token reader for Netpbm: whitespace separated, '#' starts a comment
// running to end of line.
class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t position() const { return pos_; }

  std::string_view token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
           bytes_[pos_] != '#') {
      ++pos_;
    }
    return bytes_.substr(start, pos_ - start);
  }

  std::size_t number(const char* what) {
    const auto tok = token();
    std::size_t value = 0;
    if (tok.empty() || !parse_number(tok, value)) {
      throw Error(ErrorCode::CorruptHeader, std::string("bad PGM ") + what);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::CorruptHeader, "missing whitespace after PGM maxval");
    }
    ++pos_;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorCode::UnsupportedFormat, "not a Netpbm file");
  }
  if (bytes[1] != '5') {
    // P6/P3 are color, P2 ascii gray, P1/P4 bitmaps.
    throw Error(ErrorCode::UnsupportedFormat,
                std::string("only binary PGM (P5) is supported, got P") + bytes[1]);
  }
  PgmHeaderReader reader(bytes.substr(2));
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  const std::size_t maxval = reader.number("maxval");
  if (width == 0 || height == 0) throw Error(ErrorCode::CorruptHeader, "zero PGM dimension");
  if (maxval == 0) throw Error(ErrorCode::CorruptHeader, "zero PGM maxval");
  if (maxval > 255) {
    throw Error(ErrorCode::UnsupportedFormat, "16-bit PGM (maxval > 255) is not supported");
  }
  reader.single_whitespace();

  const auto payload = bytes.substr(2 + reader.position());
  if (payload.size() != width * height) {
    throw Error(ErrorCode::CorruptHeader,
                "header declares " + std::to_string(width) + "x" + std::to_string(height) +
                    " but payload has " + std::to_string(payload.size()) + " bytes");
  }
  std::vector<std::uint8_t> pixels(payload.begin(), payload.end());
  if (std::any_of(pixels.begin(), pixels.end(), [&](std::uint8_t p) { return p > maxval; })) {
    throw Error(ErrorCode::CorruptHeader, "pixel value exceeds maxval");
  }
  return GrayImage(height, width, std::move(pixels));
}

GrayImage load_image(const fs::path& path) {
  try {
    return decode_pgm(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FileNotFound) throw;
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::string encode_pgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) +
                    "\n255\n";
  out.append(image.pixels().begin(), image.pixels().end());
  return out;
}

void save_image(const GrayImage& image, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  const auto bytes = encode_pgm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

GrayImage crop(const GrayImage& image, const Region& region) {
  if (region.height == 0 || region.width == 0 || region.top > image.rows() ||
      region.left > image.cols() || region.height > image.rows() - region.top ||
      region.width > image.cols() - region.left) {
    throw Error(ErrorCode::RegionOutOfBounds,
                "region {" + std::to_string(region.top) + "," + std::to_string(region.left) +
                    "," + std::to_string(region.height) + "," + std::to_string(region.width) +
                    "} outside " + std::to_string(image.rows()) + "x" +
                    std::to_string(image.cols()) + " image");
  }
  std::vector<std::uint8_t> pixels;
  pixels.reserve(region.height * region.width);
  for (std::size_t r = region.top; r < region.top + region.height; ++r) {
    const auto* row = image.pixels().data() + r * image.cols();
    pixels.insert(pixels.end(), row + region.left, row + region.left + region.width);
  }
  return GrayImage(region.height, region.width, std::move(pixels));
}

Region parse_region(std::string_view text) {
  const auto fields = split_fields(text, ',');
  Region r;
  if (fields.size() != 4 || !parse_number(fields[0], r.top) || !parse_number(fields[1], r.left) ||
      !parse_number(fields[2], r.height) || !parse_number(fields[3], r.width)) {
    throw Error(ErrorCode::InvalidArgument,
                "region must be top,left,height,width: '" + std::string(text) + "'");
  }
  return r;
}

std::string_view to_string(Gender g) noexcept { return g == Gender::Male ? "M" : "F"; }

Gender parse_gender(std::string_view text) {
  text = trim(text);
  if (text == "M" || text == "m" || text == "Male" || text == "male") return Gender::Male;
  if (text == "F" || text == "f" || text == "Female" || text == "female") return Gender::Female;
  throw Error(ErrorCode::InvalidGender, "'" + std::string(text) + "'");
}

std::string_view to_string(AgeGroup a) noexcept {
  switch (a) {
    case AgeGroup::UpTo12: return "<=12";
    case AgeGroup::Y13to19: return "13-19";
    case AgeGroup::Y20to25: return "20-25";
    case AgeGroup::Y26to35: return "26-35";
    case AgeGroup::Y36Plus: return "36+";
  }
  return "";
}

std::optional<AgeGroup> parse_age_group(std::string_view text) {
  text = trim(text);
  for (auto a : {AgeGroup::UpTo12, AgeGroup::Y13to19, AgeGroup::Y20to25, AgeGroup::Y26to35,
                 AgeGroup::Y36Plus}) {
    if (text == to_string(a)) return a;
  }
  return std::nullopt;
}

std::vector<SampleMeta> parse_manifest(std::string_view text, const fs::path& base_dir) {
  // Tolerate a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<SampleMeta> samples;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }

    const auto fields = split_fields(line, ',');
    const auto where = "row " + std::to_string(line_no);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 4 || trim(fields[0]) != "path" || trim(fields[1]) != "gender" ||
          trim(fields[2]) != "finger" || trim(fields[3]) != "age_group") {
        throw Error(ErrorCode::ParseError,
                    where + ": expected header 'path,gender,finger,age_group'");
      }
      continue;
    }
    if (fields.size() != 4) {
      throw Error(ErrorCode::ParseError, where + ": expected 4 fields, got " +
                                             std::to_string(fields.size()));
    }

    SampleMeta meta;
    const auto path_field = trim(fields[0]);
    if (path_field.empty()) throw Error(ErrorCode::ParseError, where + ": empty path");
    fs::path p{std::string(path_field)};
    meta.image_path = p.is_absolute() || base_dir.empty() ? p : base_dir / p;

    try {
      meta.gender = parse_gender(fields[1]);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidGender,
                  where + ": gender must be M or F, got '" + std::string(trim(fields[1])) + "'");
    }

    int finger = 0;
    if (!parse_number(fields[2], finger) || finger < 1 || finger > 10) {
      throw Error(ErrorCode::InvalidFingerNumber,
                  where + ": finger must be 1..10, got '" + std::string(trim(fields[2])) + "'");
    }
    meta.finger_no = finger;

    const auto age = trim(fields[3]);
    if (!age.empty()) {
      meta.age_group = parse_age_group(age);
      if (!meta.age_group) {
        throw Error(ErrorCode::ParseError,
                    where + ": unknown age_group '" + std::string(age) + "'");
      }
    }
    samples.push_back(std::move(meta));
    if (end == text.size()) break;
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "row 1: missing manifest header");
  return samples;
}

std::vector<SampleMeta> load_manifest(const fs::path& path) {
  const auto text = read_file(path);
  try {
    return parse_manifest(text, path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void save_manifest(const std::vector<SampleMeta>& samples, const fs::path& path) {
  std::ostringstream out;
  out << "path,gender,finger,age_group\n";
  const auto base = path.parent_path();
  for (const auto& s : samples) {
    auto rel = base.empty() ? s.image_path : s.image_path.lexically_relative(base);
    if (rel.empty()) rel = s.image_path;
    out << rel.generic_string() << ',' << to_string(s.gender) << ',' << s.finger_no << ',';
    if (s.age_group) out << to_string(*s.age_group);
    out << '\n';
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  file << out.str();
  if (!file) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace ridgeclass
