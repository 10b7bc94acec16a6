#include "ridgeclass/experiment.hpp"

#include <algorithm>

#include "ridgeclass/dwt.hpp"
#include "ridgeclass/error.hpp"
#include "ridgeclass/parallel.hpp"
#include "ridgeclass/svd.hpp"

namespace ridgeclass {

namespace fs = std::filesystem;

namespace {

double percent(std::size_t correct, std::size_t n) {
  return 100.0 * static_cast<double>(correct) / static_cast<double>(n);
}

// Raw per-image features shared by every cell of a sweep.
struct CachedFeatures {
  std::vector<double> spectrum;
  std::map<int, std::vector<double>> energies;  // by level
};

std::vector<CachedFeatures> compute_cache(const std::vector<const LabeledImage*>& images,
                                          bool need_spectrum, const std::vector<int>& levels,
                                          const DwtOptions& dwt, std::size_t threads) {
  std::vector<CachedFeatures> cache(images.size());
  parallel_for(
      images.size(),
      [&](std::size_t i) {
        const Matrix pixels = images[i]->image.to_matrix();
        for (const int level : levels) {
          cache[i].energies[level] = energy_vector(decompose(pixels, level, dwt)).energies;
        }
        if (need_spectrum) cache[i].spectrum = singular_values(pixels).values;
      },
      threads);
  return cache;
}

FusedFeature assemble(const CachedFeatures& c, FeatureMode mode, int level) {
  FusedFeature f;
  if (mode != FeatureMode::DwtOnly) {
    f.values = c.spectrum;
    f.layout.spectrum_len = c.spectrum.size();
  }
  if (mode != FeatureMode::SvdOnly) {
    const auto& e = c.energies.at(level);
    f.values.insert(f.values.end(), e.begin(), e.end());
    f.layout.energy_len = e.size();
  }
  return f;
}

std::string source_id_of(const LabeledImage& s) {
  return s.source_id.empty() ? s.meta.image_path.generic_string() : s.source_id;
}

void check_inputs(const std::vector<LabeledImage>& learning,
                  const std::vector<LabeledImage>& testing, const SweepAxes& axes) {
  if (learning.empty()) throw Error(ErrorCode::EmptyDataset, "learning set is empty");
  bool has_male = false;
  bool has_female = false;
  for (const auto& t : testing) (t.meta.gender == Gender::Male ? has_male : has_female) = true;
  if (!has_male || !has_female) {
    throw Error(ErrorCode::InsufficientData,
                std::string("no ") + (has_male ? "female" : "male") + " test samples");
  }
  const std::size_t rows = learning.front().image.rows();
  const std::size_t cols = learning.front().image.cols();
  auto check_shape = [&](const LabeledImage& s) {
    if (s.image.rows() != rows || s.image.cols() != cols) {
      throw Error(ErrorCode::ShapeMismatch, "image " + source_id_of(s) + " is " +
                                                std::to_string(s.image.rows()) + "x" +
                                                std::to_string(s.image.cols()) + ", expected " +
                                                std::to_string(rows) + "x" + std::to_string(cols));
    }
  };
  for (const auto& s : learning) check_shape(s);
  for (const auto& s : testing) check_shape(s);
  const int admissible = max_levels(rows, cols);
  for (const int level : axes.levels) {
    if (level < 1) throw Error(ErrorCode::InvalidArgument, "decomposition level must be >= 1");
    if (level > admissible) {
      throw Error(ErrorCode::TooManyLevels, std::to_string(rows) + "x" + std::to_string(cols) +
                                                " admits at most " + std::to_string(admissible) +
                                                " level(s)");
    }
  }
  for (const auto k : axes.ks) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  }
}

}  // namespace

ClassificationReport aggregate(const std::vector<SampleOutcome>& outcomes,
                               const ExperimentConfig& config) {
  ClassificationReport report;
  report.config = config;
  for (int f = 1; f <= 10; ++f) report.per_finger[f] = {};
  for (const auto& o : outcomes) {
    auto& cell = report.per_finger[o.finger_no];
    const bool correct = o.truth == o.predicted;
    if (o.truth == Gender::Male) {
      ++cell.male_n;
      cell.male_correct += correct;
    } else {
      ++cell.female_n;
      cell.female_correct += correct;
    }
    ++report.total_n;
    report.total_correct += correct;
  }

  double male_sum = 0.0;
  double female_sum = 0.0;
  std::size_t male_cells = 0;
  std::size_t female_cells = 0;
  for (auto& [finger, cell] : report.per_finger) {
    if (cell.male_n > 0) {
      cell.male_acc = percent(cell.male_correct, cell.male_n);
      male_sum += *cell.male_acc;
      ++male_cells;
    }
    if (cell.female_n > 0) {
      cell.female_acc = percent(cell.female_correct, cell.female_n);
      female_sum += *cell.female_acc;
      ++female_cells;
    }
  }
  if (male_cells > 0) report.male_avg = male_sum / static_cast<double>(male_cells);
  if (female_cells > 0) report.female_avg = female_sum / static_cast<double>(female_cells);
  if (report.total_n > 0) report.overall = percent(report.total_correct, report.total_n);
  return report;
}

std::vector<ExperimentResult> run_sweep(const std::vector<LabeledImage>& learning,
                                        const std::vector<LabeledImage>& testing,
                                        const ExperimentConfig& base, const SweepAxes& axes) {
  check_inputs(learning, testing, axes);
  const DwtOptions dwt{Wavelet::by_name(base.wavelet), parse_boundary(base.boundary)};

  const bool need_spectrum = std::any_of(axes.modes.begin(), axes.modes.end(),
                                         [](FeatureMode m) { return m != FeatureMode::DwtOnly; });
  const bool need_energy = std::any_of(axes.modes.begin(), axes.modes.end(),
                                       [](FeatureMode m) { return m != FeatureMode::SvdOnly; });

  std::vector<const LabeledImage*> all;
  all.reserve(learning.size() + testing.size());
  for (const auto& s : learning) all.push_back(&s);
  for (const auto& s : testing) all.push_back(&s);
  const auto cache = compute_cache(all, need_spectrum,
                                   need_energy ? axes.levels : std::vector<int>{}, dwt,
                                   base.threads);
  const std::size_t rows = learning.front().image.rows();
  const std::size_t cols = learning.front().image.cols();

  std::vector<ExperimentResult> results;
  for (const auto mode : axes.modes) {
    // SVD-only features do not depend on the level; still one cell per level
    // so every mode yields the same table grid.
    for (const int level : axes.levels) {
      FeatureDatabase db;
      db.config.k_level = level;
      db.config.wavelet = dwt.wavelet.name;
      db.config.boundary = std::string(to_string(dwt.boundary));
      db.config.image_rows = rows;
      db.config.image_cols = cols;
      db.config.layout = feature_layout(rows, cols, level, mode);
      db.entries.reserve(learning.size());
      for (std::size_t i = 0; i < learning.size(); ++i) {
        db.entries.push_back({assemble(cache[i], mode, level), learning[i].meta.gender,
                              learning[i].meta.finger_no, source_id_of(learning[i])});
      }
      std::vector<FusedFeature> queries;
      queries.reserve(testing.size());
      for (std::size_t i = 0; i < testing.size(); ++i) {
        queries.push_back(assemble(cache[learning.size() + i], mode, level));
      }
      if (base.normalize) {
        const auto z = Standardizer::fit(db);
        db = z.apply(std::move(db));
        for (auto& q : queries) z.apply(q.values);
      }

      std::map<int, FeatureDatabase> by_finger;
      if (base.per_finger_db) {
        for (const auto& e : db.entries) {
          auto& sub = by_finger[e.finger_no];
          sub.config = db.config;
          sub.entries.push_back(e);
        }
      }

      for (const auto k : axes.ks) {
        ExperimentConfig cfg = base;
        cfg.feature_mode = mode;
        cfg.k_level = level;
        cfg.knn.k_neighbors = k;

        ExperimentResult result;
        result.learning_n = learning.size();
        result.testing_n = testing.size();
        result.outcomes.resize(testing.size());
        parallel_for(
            testing.size(),
            [&](std::size_t i) {
              const auto& t = testing[i];
              const FeatureDatabase* target = &db;
              if (base.per_finger_db) {
                const auto it = by_finger.find(t.meta.finger_no);
                if (it == by_finger.end()) {
                  throw Error(ErrorCode::InsufficientData,
                              "no learning entries for finger " +
                                  std::to_string(t.meta.finger_no));
                }
                target = &it->second;
              }
              const auto c = knn_classify(queries[i], *target, cfg.knn);
              result.outcomes[i] = {source_id_of(t), t.meta.finger_no, t.meta.gender, c.label};
            },
            base.threads);
        result.report = aggregate(result.outcomes, cfg);
        results.push_back(std::move(result));
      }
    }
  }
  return results;
}

std::vector<LabeledImage> load_samples(const std::vector<SampleMeta>& samples,
                                       const fs::path& manifest_dir,
                                       const std::optional<Region>& crop_region) {
  std::vector<LabeledImage> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& meta = samples[i];
    auto image = load_image(meta.image_path);
    if (crop_region) image = crop(image, *crop_region);
    auto id = manifest_dir.empty() ? meta.image_path
                                   : meta.image_path.lexically_relative(manifest_dir);
    if (id.empty()) id = meta.image_path;
    out[i] = {std::move(image), meta, id.generic_string()};
  }
  return out;
}

namespace {

struct LoadedSplit {
  std::vector<LabeledImage> learning;
  std::vector<LabeledImage> testing;
  std::vector<std::string> warnings;
};

LoadedSplit load_split(const fs::path& manifest, const ExperimentConfig& config) {
  const auto samples = load_manifest(manifest);
  auto split = split_dataset(samples, config.split_seed);
  const auto dir = manifest.parent_path();
  return {load_samples(split.learning, dir, config.crop),
          load_samples(split.testing, dir, config.crop), std::move(split.warnings)};
}

}  // namespace

std::vector<ExperimentResult> run_sweep(const fs::path& manifest, const ExperimentConfig& base,
                                        const SweepAxes& axes) {
  auto data = load_split(manifest, base);
  auto results = run_sweep(data.learning, data.testing, base, axes);
  for (auto& r : results) r.warnings = data.warnings;
  return results;
}

ExperimentResult run_experiment(const std::vector<LabeledImage>& learning,
                                const std::vector<LabeledImage>& testing,
                                const ExperimentConfig& config) {
  SweepAxes axes{{config.feature_mode}, {config.k_level}, {config.knn.k_neighbors}};
  return std::move(run_sweep(learning, testing, config, axes).front());
}

ExperimentResult run_experiment(const fs::path& manifest, const ExperimentConfig& config) {
  SweepAxes axes{{config.feature_mode}, {config.k_level}, {config.knn.k_neighbors}};
  return std::move(run_sweep(manifest, config, axes).front());
}

}  // namespace ridgeclass
