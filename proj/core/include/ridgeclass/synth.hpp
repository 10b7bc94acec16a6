#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ridgeclass/features.hpp"
#include "ridgeclass/image_io.hpp"

namespace ridgeclass {

struct SynthClass {
  Gender label = Gender::Male;
  double ridge_period_px = 8.0;
  double base_orientation_deg = 0.0;
  /// Each image's orientation is uniform in base +/- jitter.
  double orientation_jitter_deg = 0.0;
  int count = 1;
};

/// Ridge-like textures: an oriented sinusoidal grating per image,
///   mean + amplitude * sin(2 pi (c cos t + r sin t) / period) + noise,
/// rounded half away from zero and clamped to [0, 255].
struct SynthSpec {
  std::vector<SynthClass> classes;
  std::size_t rows = 300;
  std::size_t cols = 260;
  double noise_sigma = 0.0;
  double mean = 128.0;
  double amplitude = 100.0;
  std::uint64_t seed = 0;
};

inline constexpr double kDefaultOrientationDeg = 30.0;
inline constexpr double kDefaultJitterDeg = 15.0;

/// Two-class spec, 300x260, both classes at kDefaultOrientationDeg +/-
/// kDefaultJitterDeg. Pass the shorter period as female_period to mimic
/// denser female ridges.
SynthSpec two_class_spec(double male_period, double female_period, int count_per_class,
                         double noise_sigma, std::uint64_t seed);

/// Classes in order, `count` images each; finger numbers cycle 1..10 within
/// a class. meta.image_path is "images/<source_id>.pgm", relative. Each image
/// draws from its own generator seeded by (seed, global index). InvalidSpec
/// on empty classes, non-positive periods or counts, duplicate periods,
/// negative noise or a zero dimension.
std::vector<LabeledImage> generate(const SynthSpec& spec);

/// Writes every image under out_dir/images/ and out_dir/manifest.csv; returns
/// the manifest path.
std::filesystem::path write_dataset(const std::vector<LabeledImage>& samples,
                                    const std::filesystem::path& out_dir);

}  // namespace ridgeclass
