#include "ridgeclass/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "ridgeclass/error.hpp"
#include "ridgeclass/random.hpp"

namespace ridgeclass {

namespace fs = std::filesystem;

namespace {

void validate(const SynthSpec& spec) {
  if (spec.classes.empty()) throw Error(ErrorCode::InvalidSpec, "no classes");
  if (spec.rows == 0 || spec.cols == 0) throw Error(ErrorCode::InvalidSpec, "zero image dimension");
  if (!(spec.noise_sigma >= 0.0)) throw Error(ErrorCode::InvalidSpec, "noise_sigma must be >= 0");
  std::set<double> periods;
  for (const auto& c : spec.classes) {
    if (!(c.ridge_period_px > 0.0)) throw Error(ErrorCode::InvalidSpec, "ridge period must be > 0");
    if (c.count < 1) throw Error(ErrorCode::InvalidSpec, "class count must be >= 1");
    if (!periods.insert(c.ridge_period_px).second) {
      throw Error(ErrorCode::InvalidSpec, "classes must have distinct ridge periods");
    }
  }
}

std::uint8_t quantize(double v) {
  const double r = std::round(v);  // half away from zero
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

}  // namespace

SynthSpec two_class_spec(double male_period, double female_period, int count_per_class,
                         double noise_sigma, std::uint64_t seed) {
  SynthSpec spec;
  spec.classes = {
      {Gender::Male, male_period, kDefaultOrientationDeg, kDefaultJitterDeg, count_per_class},
      {Gender::Female, female_period, kDefaultOrientationDeg, kDefaultJitterDeg, count_per_class},
  };
  spec.noise_sigma = noise_sigma;
  spec.seed = seed;
  return spec;
}

std::vector<LabeledImage> generate(const SynthSpec& spec) {
  validate(spec);
  std::vector<LabeledImage> out;
  std::uint64_t global = 0;
  for (std::size_t ci = 0; ci < spec.classes.size(); ++ci) {
    const auto& cls = spec.classes[ci];
    for (int i = 0; i < cls.count; ++i, ++global) {
      PortableRng rng(mix_seed(spec.seed ^ mix_seed(global)));
      const double jitter = cls.orientation_jitter_deg == 0.0
                                ? 0.0
                                : rng.uniform(-cls.orientation_jitter_deg,
                                              cls.orientation_jitter_deg);
      const double theta = (cls.base_orientation_deg + jitter) * std::numbers::pi / 180.0;
      const double kx = 2.0 * std::numbers::pi * std::cos(theta) / cls.ridge_period_px;
      const double ky = 2.0 * std::numbers::pi * std::sin(theta) / cls.ridge_period_px;

      std::vector<std::uint8_t> pixels(spec.rows * spec.cols);
      for (std::size_t r = 0; r < spec.rows; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) {
          double v = spec.mean + spec.amplitude * std::sin(kx * static_cast<double>(c) +
                                                           ky * static_cast<double>(r));
          if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.normal();
          pixels[r * spec.cols + c] = quantize(v);
        }
      }

      char name[64];
      std::snprintf(name, sizeof name, "c%zu_%s_%04d", ci,
                    cls.label == Gender::Male ? "m" : "f", i);
      LabeledImage sample{GrayImage(spec.rows, spec.cols, std::move(pixels)), {}, name};
      sample.meta.image_path = fs::path("images") / (std::string(name) + ".pgm");
      sample.meta.gender = cls.label;
      sample.meta.finger_no = i % 10 + 1;
      out.push_back(std::move(sample));
    }
  }
  return out;
}

fs::path write_dataset(const std::vector<LabeledImage>& samples, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + (out_dir / "images").string());
  std::vector<SampleMeta> metas;
  metas.reserve(samples.size());
  for (const auto& s : samples) {
    auto meta = s.meta;
    if (meta.image_path.is_relative()) meta.image_path = out_dir / meta.image_path;
    save_image(s.image, meta.image_path);
    metas.push_back(std::move(meta));
  }
  const auto manifest = out_dir / "manifest.csv";
  save_manifest(metas, manifest);
  return manifest;
}

}  // namespace ridgeclass
