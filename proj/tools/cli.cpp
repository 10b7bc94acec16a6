#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ridgeclass/classifier.hpp"
#include "ridgeclass/error.hpp"
#include "ridgeclass/experiment.hpp"
#include "ridgeclass/features.hpp"
#include "ridgeclass/image_io.hpp"
#include "ridgeclass/report.hpp"
#include "ridgeclass/synth.hpp"

namespace ridgeclass {

namespace {

const std::vector<std::string> kModes{"dwt", "svd", "fused"};
const std::vector<std::string> kWavelets{"haar", "db1", "db2"};
const std::vector<std::string> kBoundaries{"symmetric", "periodic"};
const std::vector<std::string> kFormats{"text", "csv", "json"};

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct FeatureFlags {
  int level = 6;
  std::string mode = "fused";
  std::string wavelet = "haar";
  std::string boundary = "symmetric";
  std::string crop;

  void add_to(CLI::App& app, bool with_mode = true) {
    app.add_option("--level", level, "DWT decomposition level")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    if (with_mode) {
      app.add_option("--mode", mode, "Feature mode")
          ->capture_default_str()
          ->check(CLI::IsMember(kModes));
    }
    app.add_option("--wavelet", wavelet, "Wavelet filter bank")
        ->capture_default_str()
        ->check(CLI::IsMember(kWavelets));
    app.add_option("--boundary", boundary, "Boundary extension")
        ->capture_default_str()
        ->check(CLI::IsMember(kBoundaries));
    app.add_option("--crop", crop, "Crop rectangle top,left,height,width (default: full image)");
  }

  std::optional<Region> region() const {
    if (crop.empty()) return std::nullopt;
    return parse_region(crop);
  }

  FeatureOptions options() const {
    FeatureOptions o;
    o.levels = level;
    o.mode = parse_feature_mode(mode);
    o.dwt = {Wavelet::by_name(wavelet), parse_boundary(boundary)};
    return o;
  }
};

GrayImage load_cropped(const std::string& path, const std::optional<Region>& region) {
  auto img = load_image(path);
  return region ? crop(img, *region) : img;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error(ErrorCode::IoError, "write failed: " + path);
}

// --- extract ---------------------------------------------------------------

struct ExtractCmd {
  std::string image;
  FeatureFlags features;
  std::string format = "text";

  void add_to(CLI::App& app) {
    app.add_option("--image", image, "Input PGM image")->required();
    features.add_to(app);
    app.add_option("--format", format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember(kFormats));
  }

  int run(std::ostream& out) const {
    const auto img = load_cropped(image, features.region());
    const auto f = extract_features(img, features.options());
    if (format == "json") {
      nlohmann::json j = {{"image", image},
                          {"rows", img.rows()},
                          {"cols", img.cols()},
                          {"spectrum_len", f.layout.spectrum_len},
                          {"energy_len", f.layout.energy_len},
                          {"values", f.values}};
      out << j.dump(2) << '\n';
    } else if (format == "csv") {
      out << "index,part,value\n";
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        out << i << ',' << (i < f.layout.spectrum_len ? "spectrum" : "energy") << ','
            << shortest(f.values[i]) << '\n';
      }
    } else {
      out << "# " << image << ": " << img.rows() << "x" << img.cols()
          << " spectrum_len=" << f.layout.spectrum_len << " energy_len=" << f.layout.energy_len
          << '\n';
      for (const double v : f.values) out << shortest(v) << '\n';
    }
    return kExitOk;
  }
};

// --- train -----------------------------------------------------------------

struct TrainCmd {
  std::string manifest;
  std::string output;
  FeatureFlags features;
  bool learning_only = false;
  std::uint64_t seed = 0;

  void add_to(CLI::App& app) {
    app.add_option("--manifest", manifest, "Dataset manifest CSV")->required();
    app.add_option("--out", output, "Database file to write")->required();
    features.add_to(app);
    app.add_flag("--learning-only", learning_only,
                 "Use only the 2/3 learning split instead of every sample");
    app.add_option("--seed", seed, "Split seed for --learning-only")->capture_default_str();
  }

  int run(std::ostream& out, std::ostream& err) const {
    auto samples = load_manifest(manifest);
    if (learning_only) {
      auto split = split_dataset(samples, seed);
      for (const auto& w : split.warnings) err << "warning: " << w << '\n';
      samples = std::move(split.learning);
    }
    const auto dir = std::filesystem::path(manifest).parent_path();
    const auto images = load_samples(samples, dir, features.region());
    const auto db = build_database(images, features.options());
    save_database(db, output);
    out << "wrote " << db.size() << " entries to " << output << '\n';
    return kExitOk;
  }
};

// --- classify --------------------------------------------------------------

struct ClassifyCmd {
  std::string db_path;
  std::string image;
  std::size_t k = 1;
  std::string crop;
  bool normalize = false;

  void add_to(CLI::App& app) {
    app.add_option("--db", db_path, "Feature database file")->required();
    app.add_option("--image", image, "Query PGM image")->required();
    app.add_option("--k", k, "Number of neighbours")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--crop", crop, "Crop rectangle top,left,height,width");
    app.add_flag("--normalize", normalize, "z-score features with database statistics");
  }

  int run(std::ostream& out) const {
    auto db = load_database(db_path);
    auto img = load_image(image);
    if (!crop.empty()) img = ridgeclass::crop(img, parse_region(crop));
    if (img.rows() != db.config.image_rows || img.cols() != db.config.image_cols) {
      throw Error(ErrorCode::ShapeMismatch,
                  "query is " + std::to_string(img.rows()) + "x" + std::to_string(img.cols()) +
                      ", database was built from " + std::to_string(db.config.image_rows) + "x" +
                      std::to_string(db.config.image_cols));
    }
    FeatureOptions opt;
    opt.levels = db.config.k_level;
    const auto& layout = db.config.layout;
    opt.mode = layout.spectrum_len == 0   ? FeatureMode::DwtOnly
               : layout.energy_len == 0 ? FeatureMode::SvdOnly
                                        : FeatureMode::Fused;
    opt.dwt = {Wavelet::by_name(db.config.wavelet), parse_boundary(db.config.boundary)};
    auto query = extract_features(img, opt);
    if (normalize) {
      const auto z = Standardizer::fit(db);
      db = z.apply(std::move(db));
      z.apply(query.values);
    }
    const auto c = knn_classify(query, db, {k});
    out << "label: " << to_string(c.label) << '\n';
    out << "votes: M=" << c.votes.at(Gender::Male) << " F=" << c.votes.at(Gender::Female) << '\n';
    out << "neighbors:\n";
    for (std::size_t i = 0; i < c.neighbors.size(); ++i) {
      const auto& n = c.neighbors[i];
      out << i + 1 << ' ' << n.source_id << ' ' << to_string(n.gender) << " finger=" << n.finger_no
          << " distance=" << shortest(n.distance) << '\n';
    }
    return kExitOk;
  }
};

// --- evaluate --------------------------------------------------------------

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) {
    T v{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v <= 0) {
      throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

struct EvaluateCmd {
  std::string manifest;
  FeatureFlags features;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string output;
  bool normalize = false;
  bool per_finger_db = false;
  bool sweep = false;
  std::string sweep_modes = "dwt,svd,fused";
  std::string sweep_levels = "5,6,7";
  std::string sweep_ks = "1,3,5";

  void add_to(CLI::App& app) {
    app.add_option("--manifest", manifest, "Dataset manifest CSV")->required();
    features.add_to(app);
    app.add_option("--k", k, "Number of neighbours")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Split seed")->capture_default_str();
    app.add_option("--format", format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember(kFormats));
    app.add_option("--out", output, "Write the report here instead of stdout");
    app.add_flag("--normalize", normalize, "z-score features with learning-set statistics");
    app.add_flag("--per-finger-db", per_finger_db,
                 "Match each test sample only against learning samples of its finger");
    app.add_flag("--sweep", sweep, "Run the mode x level x k matrix");
    app.add_option("--sweep-modes", sweep_modes, "Modes for --sweep")->capture_default_str();
    app.add_option("--sweep-levels", sweep_levels, "Levels for --sweep")->capture_default_str();
    app.add_option("--sweep-ks", sweep_ks, "k values for --sweep")->capture_default_str();
  }

  int run(std::ostream& out, std::ostream& err) const {
    ExperimentConfig cfg;
    cfg.feature_mode = parse_feature_mode(features.mode);
    cfg.k_level = features.level;
    cfg.knn.k_neighbors = k;
    cfg.split_seed = seed;
    cfg.wavelet = Wavelet::by_name(features.wavelet).name;
    cfg.boundary = features.boundary;
    cfg.normalize = normalize;
    cfg.per_finger_db = per_finger_db;
    cfg.crop = features.region();
    const auto fmt = parse_report_format(format);

    std::vector<ExperimentResult> results;
    if (sweep) {
      SweepAxes axes;
      axes.modes.clear();
      for (const auto& m : split_list(sweep_modes)) axes.modes.push_back(parse_feature_mode(m));
      axes.levels = parse_list<int>(sweep_levels, "level");
      axes.ks = parse_list<std::size_t>(sweep_ks, "k");
      if (axes.modes.empty() || axes.levels.empty() || axes.ks.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty sweep axis");
      }
      results = run_sweep(manifest, cfg, axes);
    } else {
      results.push_back(run_experiment(manifest, cfg));
    }
    for (const auto& w : results.front().warnings) err << "warning: " << w << '\n';

    std::string text;
    if (fmt == ReportFormat::Json && results.size() > 1) {
      text = "[\n";
      for (std::size_t i = 0; i < results.size(); ++i) {
        auto one = render_report(results[i].report, fmt);
        one.pop_back();  // trailing newline
        text += one + (i + 1 < results.size() ? ",\n" : "\n");
      }
      text += "]\n";
    } else {
      for (std::size_t i = 0; i < results.size(); ++i) {
        if (i > 0) text += "\n";
        text += render_report(results[i].report, fmt);
      }
    }
    write_output(text, output, out);
    return kExitOk;
  }
};

// --- synth -----------------------------------------------------------------

struct SynthCmd {
  std::string out_dir;
  double male_period = 10.0;
  double female_period = 6.0;
  int count = 60;
  std::size_t rows = 300;
  std::size_t cols = 260;
  double noise = 10.0;
  std::uint64_t seed = 42;
  double orientation = kDefaultOrientationDeg;
  double jitter = kDefaultJitterDeg;
  double mean = 128.0;
  double amplitude = 100.0;

  void add_to(CLI::App& app) {
    app.add_option("--out", out_dir, "Output directory (images/ and manifest.csv)")->required();
    app.add_option("--male-period", male_period, "Ridge period of male samples, px")
        ->capture_default_str();
    app.add_option("--female-period", female_period, "Ridge period of female samples, px")
        ->capture_default_str();
    app.add_option("--count", count, "Images per class")->capture_default_str();
    app.add_option("--rows", rows, "Image height")->capture_default_str();
    app.add_option("--cols", cols, "Image width")->capture_default_str();
    app.add_option("--noise", noise, "Gaussian noise sigma")->capture_default_str();
    app.add_option("--seed", seed, "Generator seed")->capture_default_str();
    app.add_option("--orientation", orientation, "Base ridge orientation, degrees")
        ->capture_default_str();
    app.add_option("--jitter", jitter, "Orientation jitter, +/- degrees")->capture_default_str();
    app.add_option("--mean", mean, "Mean intensity")->capture_default_str();
    app.add_option("--amplitude", amplitude, "Grating amplitude")->capture_default_str();
  }

  int run(std::ostream& out) const {
    SynthSpec spec;
    spec.classes = {{Gender::Male, male_period, orientation, jitter, count},
                    {Gender::Female, female_period, orientation, jitter, count}};
    spec.rows = rows;
    spec.cols = cols;
    spec.noise_sigma = noise;
    spec.mean = mean;
    spec.amplitude = amplitude;
    spec.seed = seed;
    const auto samples = generate(spec);
    const auto manifest = write_dataset(samples, out_dir);
    out << "wrote " << samples.size() << " images; manifest " << manifest.generic_string() << '\n';
    return kExitOk;
  }
};

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitData;
}

// Expands "--config FILE" into "--key=value" arguments appended after the
// command line. Keys already given explicitly are skipped so flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> files;
  std::vector<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      files.push_back(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      files.push_back(a.substr(9));
    } else if (a.rfind("--", 0) == 0) {
      given.push_back(a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                      : a.find('=') - 2));
    }
  }
  auto trim = [](std::string v) {
    const auto b = v.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    return v.substr(b, v.find_last_not_of(" \t\r") - b + 1);
  };
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw CLI::FileError::Missing(file);
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw CLI::ConversionError("config line '" + line + "'");
      const auto key = trim(line.substr(0, eq));
      auto value = trim(line.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        value = value.substr(1, value.size() - 2);
      }
      if (std::find(given.begin(), given.end(), key) != given.end()) continue;
      given.push_back(key);
      args.push_back("--" + key + "=" + value);
    }
  }
  return args;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fingerprint gender classification from DWT sub-band energies and singular values",
               "ridgeclass"};
  app.require_subcommand(1);

  ExtractCmd extract;
  TrainCmd train;
  ClassifyCmd classify;
  EvaluateCmd evaluate;
  SynthCmd synth;

  auto* extract_app = app.add_subcommand("extract", "Dump the feature vector of one image");
  auto* train_app = app.add_subcommand("train", "Build a feature database from a manifest");
  auto* classify_app = app.add_subcommand("classify", "Classify one image against a database");
  auto* evaluate_app = app.add_subcommand("evaluate", "Split, learn, classify and report");
  auto* synth_app = app.add_subcommand("synth", "Generate a synthetic two-class dataset");
  extract.add_to(*extract_app);
  train.add_to(*train_app);
  classify.add_to(*classify_app);
  evaluate.add_to(*evaluate_app);
  synth.add_to(*synth_app);
  for (auto* sub : {extract_app, train_app, classify_app, evaluate_app, synth_app}) {
    sub->add_option("--config", "Read flags from a key = value file")->check(CLI::ExistingFile);
  }

  try {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*extract_app) return extract.run(out);
    if (*train_app) return train.run(out, err);
    if (*classify_app) return classify.run(out);
    if (*evaluate_app) return evaluate.run(out, err);
    if (*synth_app) return synth.run(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ridgeclass
