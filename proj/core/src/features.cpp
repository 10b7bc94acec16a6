#include "ridgeclass/features.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ridgeclass/error.hpp"
#include "ridgeclass/parallel.hpp"

namespace ridgeclass {

std::string_view to_string(FeatureMode m) noexcept {
  switch (m) {
    case FeatureMode::DwtOnly: return "dwt";
    case FeatureMode::SvdOnly: return "svd";
    case FeatureMode::Fused: return "fused";
  }
  return "";
}

FeatureMode parse_feature_mode(std::string_view text) {
  if (text == "dwt" || text == "dwt-only") return FeatureMode::DwtOnly;
  if (text == "svd" || text == "svd-only") return FeatureMode::SvdOnly;
  if (text == "fused") return FeatureMode::Fused;
  throw Error(ErrorCode::InvalidArgument,
              "feature mode must be dwt, svd or fused, got '" + std::string(text) + "'");
}

FeatureLayout feature_layout(std::size_t rows, std::size_t cols, int levels, FeatureMode mode) {
  FeatureLayout layout;
  if (mode != FeatureMode::DwtOnly) layout.spectrum_len = std::min(rows, cols);
  if (mode != FeatureMode::SvdOnly) layout.energy_len = energy_vector_length(levels);
  return layout;
}

FusedFeature extract_features(const GrayImage& image, const FeatureOptions& options) {
  const Matrix pixels = image.to_matrix();
  FusedFeature feature;
  feature.layout = feature_layout(image.rows(), image.cols(), options.levels, options.mode);
  feature.values.reserve(feature.layout.total());

  // Decompose first so TooManyLevels surfaces before the costlier SVD.
  std::optional<EnergyVector> energies;
  if (options.mode != FeatureMode::SvdOnly) {
    energies = energy_vector(decompose(pixels, options.levels, options.dwt));
  }
  if (options.mode != FeatureMode::DwtOnly) {
    const auto spectrum = singular_values(pixels, options.svd);
    feature.values.insert(feature.values.end(), spectrum.values.begin(), spectrum.values.end());
  }
  if (energies) {
    feature.values.insert(feature.values.end(), energies->energies.begin(),
                          energies->energies.end());
  }
  return feature;
}

FusedFeature extract_features(const GrayImage& image, int levels) {
  FeatureOptions options;
  options.levels = levels;
  return extract_features(image, options);
}

FeatureDatabase build_database(std::span<const LabeledImage> samples,
                               const FeatureOptions& options, std::size_t threads) {
  if (samples.empty()) throw Error(ErrorCode::EmptyDataset, "no samples to build a database from");
  const std::size_t rows = samples.front().image.rows();
  const std::size_t cols = samples.front().image.cols();
  for (const auto& s : samples) {
    if (s.image.rows() != rows || s.image.cols() != cols) {
      throw Error(ErrorCode::ShapeMismatch,
                  "image " + s.meta.image_path.string() + " is " + std::to_string(s.image.rows()) +
                      "x" + std::to_string(s.image.cols()) + ", expected " +
                      std::to_string(rows) + "x" + std::to_string(cols));
    }
  }

  FeatureDatabase db;
  db.config.k_level = options.levels;
  db.config.wavelet = options.dwt.wavelet.name;
  db.config.boundary = std::string(to_string(options.dwt.boundary));
  db.config.image_rows = rows;
  db.config.image_cols = cols;
  db.config.layout = feature_layout(rows, cols, options.levels, options.mode);
  db.entries.resize(samples.size());
  parallel_for(
      samples.size(),
      [&](std::size_t i) {
        const auto& s = samples[i];
        auto& entry = db.entries[i];
        entry.feature = extract_features(s.image, options);
        entry.gender = s.meta.gender;
        entry.finger_no = s.meta.finger_no;
        entry.source_id = s.source_id.empty() ? s.meta.image_path.generic_string() : s.source_id;
      },
      threads);
  return db;
}

FeatureDatabase build_database(std::span<const LabeledImage> samples, int levels) {
  FeatureOptions options;
  options.levels = levels;
  return build_database(samples, options);
}

Standardizer Standardizer::fit(const FeatureDatabase& db) {
  if (db.entries.empty()) throw Error(ErrorCode::EmptyDataset, "cannot fit z-score on empty db");
  const std::size_t dim = db.config.layout.total();
  Standardizer z;
  z.mean.assign(dim, 0.0);
  z.scale.assign(dim, 0.0);
  const auto n = static_cast<double>(db.entries.size());
  for (const auto& e : db.entries) {
    for (std::size_t j = 0; j < dim; ++j) z.mean[j] += e.feature.values[j];
  }
  for (auto& m : z.mean) m /= n;
  for (const auto& e : db.entries) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = e.feature.values[j] - z.mean[j];
      z.scale[j] += d * d;
    }
  }
  for (auto& s : z.scale) {
    s = std::sqrt(s / n);
    if (!(s > 0.0)) s = 1.0;
  }
  return z;
}

void Standardizer::apply(std::span<double> values) const {
  if (values.size() != mean.size()) {
    throw Error(ErrorCode::LengthMismatch, "feature length does not match standardizer");
  }
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = (values[j] - mean[j]) / scale[j];
}

FeatureDatabase Standardizer::apply(FeatureDatabase db) const {
  for (auto& e : db.entries) apply(e.feature.values);
  return db;
}

}  // namespace ridgeclass
