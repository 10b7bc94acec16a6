#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ridgeclass/matrix.hpp"

namespace ridgeclass {

/// 8-bit grayscale raster, row-major. rows is the image height, cols the width,
/// so a 260x300 (width x height) fingerprint is rows=300, cols=260.
class GrayImage {
 public:
  GrayImage() = default;
  /// Throws InvalidArgument when a dimension is zero or pixels.size() != rows*cols.
  GrayImage(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> pixels);
  GrayImage(std::size_t rows, std::size_t cols, std::uint8_t fill = 0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return pixels_[r * cols_ + c]; }
  std::uint8_t& at(std::size_t r, std::size_t c) { return pixels_[r * cols_ + c]; }

  /// Pixel intensities as reals, no rescaling.
  Matrix to_matrix() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> pixels_;
};

struct Region {
  std::size_t top = 0;
  std::size_t left = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  friend bool operator==(const Region&, const Region&) = default;
};

/// Region covering the whole image.
Region full_region(const GrayImage& image) noexcept;

/// Region `inner`, expressed relative to `outer`, mapped back into the
/// coordinates `outer` is expressed in.
Region compose(const Region& outer, const Region& inner) noexcept;

/// Parses "top,left,height,width".
Region parse_region(std::string_view text);

/// Reads a binary PGM (P5, maxval <= 255). Comments in the header are accepted.
GrayImage load_image(const std::filesystem::path& path);
GrayImage decode_pgm(std::string_view bytes);

void save_image(const GrayImage& image, const std::filesystem::path& path);
std::string encode_pgm(const GrayImage& image);

GrayImage crop(const GrayImage& image, const Region& region);

enum class Gender : std::uint8_t { Male = 0, Female = 1 };

std::string_view to_string(Gender g) noexcept;
/// Accepts "M"/"F" (case-insensitive) and "Male"/"Female".
Gender parse_gender(std::string_view text);

enum class AgeGroup : std::uint8_t { UpTo12, Y13to19, Y20to25, Y26to35, Y36Plus };

/// Manifest spellings: "<=12", "13-19", "20-25", "26-35", "36+".
std::string_view to_string(AgeGroup a) noexcept;
std::optional<AgeGroup> parse_age_group(std::string_view text);

struct SampleMeta {
  std::filesystem::path image_path;
  Gender gender = Gender::Male;
  int finger_no = 1;  // 1..5 left little..left thumb, 6..10 right thumb..right little
  std::optional<AgeGroup> age_group;

  friend bool operator==(const SampleMeta&, const SampleMeta&) = default;
};

/// Reads the `path,gender,finger,age_group` CSV. Image paths are resolved
/// against the manifest's directory.
std::vector<SampleMeta> load_manifest(const std::filesystem::path& path);

/// Parses manifest text; relative image paths are joined onto `base_dir`.
std::vector<SampleMeta> parse_manifest(std::string_view text,
                                       const std::filesystem::path& base_dir = {});

/// Writes a manifest whose image paths are made relative to the manifest's directory.
void save_manifest(const std::vector<SampleMeta>& samples, const std::filesystem::path& path);

struct DatasetSplit {
  std::vector<SampleMeta> learning;
  std::vector<SampleMeta> testing;
  /// Human-readable notes about strata that contributed nothing to learning.
  std::vector<std::string> warnings;
};

/// Stratified by (gender, finger_no): each stratum of n samples sends
/// floor(2n/3) of them, chosen by a seeded shuffle, to learning. Both halves
/// keep the input order. The shuffle uses its own bounded draw on top of
/// mt19937_64 so the split is identical across standard libraries.
DatasetSplit split_dataset(const std::vector<SampleMeta>& samples, std::uint64_t seed);

}  // namespace ridgeclass
