#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ridgeclass/dwt.hpp"
#include "ridgeclass/image_io.hpp"
#include "ridgeclass/svd.hpp"

namespace ridgeclass {

enum class FeatureMode { DwtOnly, SvdOnly, Fused };

std::string_view to_string(FeatureMode m) noexcept;
/// "dwt", "svd" or "fused".
FeatureMode parse_feature_mode(std::string_view text);

/// Fused vectors are [singular spectrum | sub-band energies]; either part may
/// be empty in the single-feature modes.
struct FeatureLayout {
  std::size_t spectrum_len = 0;
  std::size_t energy_len = 0;

  std::size_t total() const noexcept { return spectrum_len + energy_len; }
  friend bool operator==(const FeatureLayout&, const FeatureLayout&) = default;
};

/// Pure function of (image shape, level, mode): min(R, C) and/or 3k + 1.
FeatureLayout feature_layout(std::size_t rows, std::size_t cols, int levels, FeatureMode mode);

struct FusedFeature {
  std::vector<double> values;
  FeatureLayout layout;

  std::span<const double> spectrum() const { return {values.data(), layout.spectrum_len}; }
  std::span<const double> energies() const {
    return {values.data() + layout.spectrum_len, layout.energy_len};
  }
  friend bool operator==(const FusedFeature&, const FusedFeature&) = default;
};

struct FeatureOptions {
  int levels = 6;
  FeatureMode mode = FeatureMode::Fused;
  DwtOptions dwt;
  JacobiOptions svd;
};

FusedFeature extract_features(const GrayImage& image, const FeatureOptions& options);

/// Fused spectrum + energies at `levels`, Haar with symmetric boundary.
FusedFeature extract_features(const GrayImage& image, int levels);

struct LabeledFeature {
  FusedFeature feature;
  Gender gender = Gender::Male;
  int finger_no = 1;
  std::string source_id;

  friend bool operator==(const LabeledFeature&, const LabeledFeature&) = default;
};

struct DatabaseConfig {
  int k_level = 6;
  std::string wavelet = "haar";
  std::string boundary = "symmetric";
  std::size_t image_rows = 0;
  std::size_t image_cols = 0;
  FeatureLayout layout;

  friend bool operator==(const DatabaseConfig&, const DatabaseConfig&) = default;
};

struct FeatureDatabase {
  DatabaseConfig config;
  std::vector<LabeledFeature> entries;

  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const FeatureDatabase&, const FeatureDatabase&) = default;
};

struct LabeledImage {
  GrayImage image;
  SampleMeta meta;
  /// Identifier stored in the database; defaults to meta.image_path when empty.
  std::string source_id;
};

/// One entry per sample, in input order. Extraction runs on parallel_for
/// with `threads` workers (0 = thread_count()).
FeatureDatabase build_database(std::span<const LabeledImage> samples,
                               const FeatureOptions& options, std::size_t threads = 0);
FeatureDatabase build_database(std::span<const LabeledImage> samples, int levels);

/// Per-dimension z-score fitted on a database. Dimensions with zero spread
/// keep a unit scale.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const FeatureDatabase& db);
  void apply(std::span<double> values) const;
  FeatureDatabase apply(FeatureDatabase db) const;
};

/// Binary database file; layout documented in docs/database_format.md.
std::string serialize_database(const FeatureDatabase& db);
FeatureDatabase deserialize_database(std::string_view bytes);
void save_database(const FeatureDatabase& db, const std::filesystem::path& path);
FeatureDatabase load_database(const std::filesystem::path& path);

}  // namespace ridgeclass
