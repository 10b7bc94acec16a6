#include <doctest.h>

#include "oracles.hpp"
#include "ridgeclass/error.hpp"
#include "ridgeclass/synth.hpp"

using namespace ridgeclass;

namespace {

SynthSpec one_class(double period, double jitter, double sigma, int count) {
  SynthSpec spec;
  spec.classes = {{Gender::Male, period, 0.0, jitter, count}};
  spec.rows = 32;
  spec.cols = 48;
  spec.noise_sigma = sigma;
  spec.seed = 9;
  return spec;
}

}  // namespace

TEST_CASE("noiseless unjittered grating: identical images, rows periodic") {
  const auto samples = generate(one_class(8.0, 0.0, 0.0, 4));
  REQUIRE(samples.size() == 4);
  for (const auto& s : samples) CHECK(s.image == samples[0].image);
  const auto& img = samples[0].image;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c + 8 < img.cols(); ++c) CHECK(img.at(r, c) == img.at(r, c + 8));
  }
  // Not constant: the grating actually varies along the row.
  CHECK(img.at(0, 0) != img.at(0, 2));
}

TEST_CASE("same seed, same bytes; different seed, different noise") {
  auto spec = one_class(6.0, 20.0, 10.0, 5);
  const auto a = generate(spec);
  const auto b = generate(spec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(encode_pgm(a[i].image) == encode_pgm(b[i].image));
  }
  spec.seed = 10;
  CHECK_FALSE(generate(spec)[0].image == a[0].image);
}

TEST_CASE("fingers cycle 1..10 and labels follow the class") {
  SynthSpec spec = one_class(6.0, 0.0, 0.0, 23);
  spec.classes.push_back({Gender::Female, 9.0, 0.0, 0.0, 3});
  const auto s = generate(spec);
  REQUIRE(s.size() == 26);
  for (int i = 0; i < 23; ++i) {
    CHECK(s[i].meta.finger_no == i % 10 + 1);
    CHECK(s[i].meta.gender == Gender::Male);
  }
  CHECK(s[23].meta.gender == Gender::Female);
  CHECK(s[23].meta.finger_no == 1);
  CHECK(s[0].source_id != s[23].source_id);
}

TEST_CASE("pixels are clamped to the 8-bit range") {
  auto spec = one_class(5.0, 0.0, 0.0, 1);
  spec.amplitude = 400.0;
  const auto img = generate(spec)[0].image;
  bool saw_low = false, saw_high = false;
  for (auto p : img.pixels()) {
    saw_low |= p == 0;
    saw_high |= p == 255;
  }
  CHECK(saw_low);
  CHECK(saw_high);
}

TEST_CASE("invalid specs") {
  auto code = [](const SynthSpec& s) {
    try {
      generate(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  SynthSpec empty;
  CHECK(code(empty) == ErrorCode::InvalidSpec);
  auto dup = one_class(6.0, 0, 0, 1);
  dup.classes.push_back({Gender::Female, 6.0, 0, 0, 1});
  CHECK(code(dup) == ErrorCode::InvalidSpec);
  CHECK(code(one_class(0.0, 0, 0, 1)) == ErrorCode::InvalidSpec);
  CHECK(code(one_class(6.0, 0, -1, 1)) == ErrorCode::InvalidSpec);
  CHECK(code(one_class(6.0, 0, 0, 0)) == ErrorCode::InvalidSpec);
}

TEST_CASE("high-frequency class puts more energy in level-1 detail bands") {
  SynthSpec spec = two_class_spec(10.0, 6.0, 20, 0.0, 1);
  spec.rows = 64;
  spec.cols = 64;
  const auto samples = generate(spec);
  double low_freq[3] = {}, high_freq[3] = {};
  for (const auto& s : samples) {
    const auto b = dwt2_single_level(s.image.to_matrix());
    double* acc = s.meta.gender == Gender::Female ? high_freq : low_freq;
    acc[0] += subband_energy(b.lh);
    acc[1] += subband_energy(b.hl);
    acc[2] += subband_energy(b.hh);
  }
  for (int i = 0; i < 3; ++i) CHECK(high_freq[i] > low_freq[i]);
}

TEST_CASE("write_dataset produces a loadable manifest") {
  const auto dir = oracle::scratch_dir("synth");
  const auto samples = generate(one_class(7.0, 5.0, 3.0, 3));
  const auto manifest = write_dataset(samples, dir);
  const auto metas = load_manifest(manifest);
  REQUIRE(metas.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(load_image(metas[i].image_path) == samples[i].image);
    CHECK(metas[i].finger_no == samples[i].meta.finger_no);
  }
}
