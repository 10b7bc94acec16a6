#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ridgeclass/classifier.hpp"
#include "ridgeclass/features.hpp"
#include "ridgeclass/image_io.hpp"

namespace ridgeclass {

struct ExperimentConfig {
  FeatureMode feature_mode = FeatureMode::Fused;
  int k_level = 6;
  KnnConfig knn;
  std::uint64_t split_seed = 0;
  std::string wavelet = "haar";
  std::string boundary = "symmetric";
  /// z-score every dimension with statistics of the learning database.
  bool normalize = false;
  /// Classify each test sample only against learning entries of its finger.
  bool per_finger_db = false;
  std::optional<Region> crop;
  /// 0 = thread_count().
  std::size_t threads = 0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct FingerCell {
  std::size_t male_n = 0;
  std::size_t male_correct = 0;
  std::size_t female_n = 0;
  std::size_t female_correct = 0;
  /// Percent; absent when the matching n is zero.
  std::optional<double> male_acc;
  std::optional<double> female_acc;

  friend bool operator==(const FingerCell&, const FingerCell&) = default;
};

/// Per-finger table with Male/Female columns. male_avg and female_avg are
/// unweighted means over the fingers that have a value; overall is
/// total_correct / total_n * 100.
struct ClassificationReport {
  std::map<int, FingerCell> per_finger;
  std::optional<double> male_avg;
  std::optional<double> female_avg;
  std::optional<double> overall;
  std::size_t total_n = 0;
  std::size_t total_correct = 0;
  ExperimentConfig config;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

struct SampleOutcome {
  std::string source_id;
  int finger_no = 1;
  Gender truth = Gender::Male;
  Gender predicted = Gender::Male;

  friend bool operator==(const SampleOutcome&, const SampleOutcome&) = default;
};

struct ExperimentResult {
  ClassificationReport report;
  /// Test samples in split order.
  std::vector<SampleOutcome> outcomes;
  std::vector<std::string> warnings;
  std::size_t learning_n = 0;
  std::size_t testing_n = 0;
};

/// Builds the report from raw outcomes; fingers 1..10 are always present.
ClassificationReport aggregate(const std::vector<SampleOutcome>& outcomes,
                               const ExperimentConfig& config);

/// Manifest -> stratified 2/3 split -> learning database -> KNN on every
/// test sample. InsufficientData when a gender has no test samples.
ExperimentResult run_experiment(const std::filesystem::path& manifest,
                                const ExperimentConfig& config);

/// Same pipeline on an explicit learning/testing partition.
ExperimentResult run_experiment(const std::vector<LabeledImage>& learning,
                                const std::vector<LabeledImage>& testing,
                                const ExperimentConfig& config);

/// The ablation matrix: every base config variant over modes x levels x k.
/// Images are loaded and split once, spectra computed once, energies once per
/// level. Results are ordered mode-major, then level, then k.
struct SweepAxes {
  std::vector<FeatureMode> modes{FeatureMode::DwtOnly, FeatureMode::SvdOnly, FeatureMode::Fused};
  std::vector<int> levels{5, 6, 7};
  std::vector<std::size_t> ks{1, 3, 5};
};

std::vector<ExperimentResult> run_sweep(const std::filesystem::path& manifest,
                                        const ExperimentConfig& base, const SweepAxes& axes);
std::vector<ExperimentResult> run_sweep(const std::vector<LabeledImage>& learning,
                                        const std::vector<LabeledImage>& testing,
                                        const ExperimentConfig& base, const SweepAxes& axes);

/// Loads a manifest's images (cropped when `crop` is set) with manifest-relative
/// source ids.
std::vector<LabeledImage> load_samples(const std::vector<SampleMeta>& samples,
                                       const std::filesystem::path& manifest_dir,
                                       const std::optional<Region>& crop);

}  // namespace ridgeclass
