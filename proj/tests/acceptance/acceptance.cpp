// Acceptance gate: one PASS/FAIL line per criterion, each with its tolerance
// and wall-clock bound. Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "ridgeclass/classifier.hpp"
#include "ridgeclass/dwt.hpp"
#include "ridgeclass/error.hpp"
#include "ridgeclass/experiment.hpp"
#include "ridgeclass/features.hpp"
#include "ridgeclass/report.hpp"
#include "ridgeclass/svd.hpp"
#include "ridgeclass/synth.hpp"

using namespace ridgeclass;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

// --- 1. feature lengths ------------------------------------------------------

Outcome feature_lengths() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::vector<std::uint8_t> px(300 * 260);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng());
  const GrayImage img(300, 260, px);
  const std::size_t want[] = {16, 19, 22};
  for (int k = 5; k <= 7; ++k) {
    const auto ev = energy_vector(decompose(img, k));
    o.require(ev.energies.size() == want[k - 5],
              "level " + std::to_string(k) + " energy length " +
                  std::to_string(ev.energies.size()));
  }
  const auto fused = extract_features(img, 6);
  o.require(fused.values.size() == 279, "fused length " + std::to_string(fused.values.size()));
  o.require(fused.layout.spectrum_len == 260 && fused.layout.energy_len == 19, "fused layout");
  if (o.pass) o.detail = "16/19/22 at levels 5/6/7, fused 279 = 260 + 19";
  return o;
}

// --- 2. sub-band energy oracle ---------------------------------------------

Outcome energy_oracle() {
  Outcome o;
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto m = oracle::random_matrix(rng, 1 + rng() % 30, 1 + rng() % 30, -300, 300);
    const double got = subband_energy(m);
    const double want = oracle::mean_abs_double_loop(m);
    const double rel = std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
    worst = std::max(worst, rel);
  }
  o.require(worst <= 1e-12, "max relative error above 1e-12");
  if (o.pass) {
    std::ostringstream d;
    d << "100 matrices, max rel err " << worst << " <= 1e-12";
    o.detail = d.str();
  }
  return o;
}

// --- 3. DWT numerics ---------------------------------------------------------

Outcome dwt_numerics() {
  Outcome o;
  std::mt19937_64 rng(3);
  double worst_energy = 0.0;
  double worst_recon = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto m = oracle::random_matrix(rng, 2 * (1 + rng() % 32), 2 * (1 + rng() % 32), 0, 255);
    const auto b = dwt2_single_level(m);
    const double in = oracle::sum_squares(m);
    const double out = oracle::sum_squares(b.ll) + oracle::sum_squares(b.lh) +
                       oracle::sum_squares(b.hl) + oracle::sum_squares(b.hh);
    worst_energy = std::max(worst_energy, std::fabs(out - in) / in);
    const auto back = oracle::haar_inverse(b);
    for (std::size_t i = 0; i < m.size(); ++i) {
      worst_recon = std::max(worst_recon, std::fabs(back.values()[i] - m.values()[i]));
    }
  }
  o.require(worst_energy <= 1e-9, "energy preservation rel err " + std::to_string(worst_energy));
  o.require(worst_recon <= 1e-9, "reconstruction abs err " + std::to_string(worst_recon));

  double worst_detail = 0.0;
  for (const double c : {0.0, 1.0, 128.0, 255.0}) {
    for (const auto shape : {std::pair<std::size_t, std::size_t>{300, 260}, {17, 9}, {64, 64}}) {
      const auto p = decompose(Matrix(shape.first, shape.second, c),
                               std::min(6, max_levels(shape.first, shape.second)));
      for (std::size_t i = 1; i < p.subbands.size(); ++i) {
        for (const double v : p.subbands[i].coeffs.values()) {
          worst_detail = std::max(worst_detail, std::fabs(v));
        }
      }
    }
  }
  o.require(worst_detail < 1e-10, "constant-image detail coeff " + std::to_string(worst_detail));
  if (o.pass) {
    std::ostringstream d;
    d << "energy rel " << worst_energy << ", recon abs " << worst_recon << ", constant detail "
      << worst_detail;
    o.detail = d.str();
  }
  return o;
}

// --- 4. SVD oracle and invariances --------------------------------------------

Outcome svd_oracle() {
  Outcome o;
  std::mt19937_64 rng(4);
  double worst_oracle = 0.0, worst_frob = 0.0, worst_t = 0.0, worst_scale = 0.0, worst_q = 0.0;
  int cases = 0;
  for (std::size_t rows = 1; rows <= 12; ++rows) {
    for (std::size_t cols = 1; cols <= 12; ++cols) {
      const auto a = oracle::random_matrix(rng, rows, cols);
      const auto s = singular_values(a).values;
      ++cases;
      o.require(s.size() == std::min(rows, cols), "spectrum length");
      for (std::size_t i = 1; i < s.size(); ++i) o.require(s[i - 1] >= s[i], "descending order");

      const auto want = oracle::singular_values_via_gram(a);
      for (std::size_t i = 0; i < s.size(); ++i) {
        worst_oracle = std::max(worst_oracle, std::fabs(s[i] - want[i]) / want[0]);
      }
      double frob = 0.0;
      for (double v : s) frob += v * v;
      worst_frob = std::max(worst_frob, std::fabs(frob - oracle::sum_squares(a)) /
                                            oracle::sum_squares(a));

      const auto st = singular_values(a.transposed()).values;
      for (std::size_t i = 0; i < s.size(); ++i) {
        worst_t = std::max(worst_t, std::fabs(s[i] - st[i]));
      }
      const double c = -2.5;
      auto scaled = a;
      for (auto& v : scaled.values()) v *= c;
      const auto sc = singular_values(scaled).values;
      for (std::size_t i = 0; i < s.size(); ++i) {
        worst_scale = std::max(worst_scale, std::fabs(sc[i] - std::fabs(c) * s[i]) /
                                                (std::fabs(c) * s[0]));
      }
      const auto q = oracle::random_orthogonal(rng, rows);
      const auto sq = singular_values(oracle::multiply(q, a)).values;
      for (std::size_t i = 0; i < s.size(); ++i) {
        worst_q = std::max(worst_q, std::fabs(sq[i] - s[i]) / s[0]);
      }
    }
  }
  o.require(cases >= 100, "only " + std::to_string(cases) + " cases");
  o.require(worst_oracle <= 1e-9, "oracle rel err " + std::to_string(worst_oracle));
  o.require(worst_frob <= 1e-9, "Frobenius rel err " + std::to_string(worst_frob));
  o.require(worst_t <= 1e-10, "transpose err " + std::to_string(worst_t));
  o.require(worst_scale <= 1e-10, "scaling rel err " + std::to_string(worst_scale));
  o.require(worst_q <= 1e-9, "orthogonal invariance rel err " + std::to_string(worst_q));
  if (o.pass) {
    std::ostringstream d;
    d << cases << " matrices; oracle " << worst_oracle << ", frob " << worst_frob << ", transpose "
      << worst_t << ", scale " << worst_scale << ", orthogonal " << worst_q;
    o.detail = d.str();
  }
  return o;
}

// --- 5. KNN oracle -------------------------------------------------------------

Outcome knn_oracle() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(-4, 4);
  int cases = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 60;
    const std::size_t dim = 1 + rng() % 12;
    std::vector<LabeledFeature> entries;
    for (std::size_t i = 0; i < n; ++i) {
      LabeledFeature e;
      e.feature.layout = {0, dim};
      for (std::size_t j = 0; j < dim; ++j) {
        // Half the cases use integer grids to force distance ties.
        e.feature.values.push_back(t % 2 ? std::round(val(rng)) : val(rng));
      }
      e.gender = rng() % 2 ? Gender::Male : Gender::Female;
      e.source_id = "id" + std::to_string(rng() % 40);
      entries.push_back(std::move(e));
    }
    std::vector<double> q(dim);
    for (auto& x : q) x = t % 2 ? std::round(val(rng)) : val(rng);
    const std::size_t k = std::min<std::size_t>(n, 1 + 2 * (rng() % 3));
    ++cases;
    const auto got = knn_classify(q, entries, {k});
    o.require(got.label == oracle::knn_sort_and_vote(q, entries, k),
              "label mismatch in case " + std::to_string(t));

    const auto nn = knn_classify(q, entries, {1});
    double best = INFINITY;
    for (const auto& e : entries) best = std::min(best, euclidean_distance(q, e.feature.values));
    o.require(nn.neighbors[0].distance == best, "k=1 is not the global argmin");
    o.require(nn.label == oracle::knn_sort_and_vote(q, entries, 1), "k=1 label");

    const auto& pick = entries[rng() % n];
    const auto self = knn_classify(pick.feature.values, entries, {1});
    o.require(self.neighbors[0].distance == 0.0, "self query distance");
    // Duplicate vectors with different labels resolve by source id; the
    // returned entry must still be an exact copy of the query.
    o.require(self.neighbors[0].distance == 0.0 &&
                  entries[self.neighbors[0].index].feature.values == pick.feature.values,
              "self query neighbour");
  }
  // Self query on distinct entries returns the entry's own label.
  std::vector<LabeledFeature> distinct;
  for (int i = 0; i < 50; ++i) {
    distinct.push_back({{{static_cast<double>(i), static_cast<double>(i * i)}, {0, 2}},
                        i % 3 ? Gender::Male : Gender::Female, 1, "d" + std::to_string(i)});
  }
  for (const auto& e : distinct) {
    o.require(knn_classify(e.feature.values, distinct, {1}).label == e.gender, "self label");
  }
  if (o.pass) o.detail = std::to_string(cases) + " random cases match sort-and-vote exactly";
  return o;
}

// --- 6. persistence --------------------------------------------------------------

Outcome persistence() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> val(-1e9, 1e9);
  const auto dir = oracle::scratch_dir("acceptance_db");
  for (int t = 0; t < 50; ++t) {
    FeatureDatabase db;
    db.config.k_level = 1 + static_cast<int>(rng() % 7);
    db.config.image_rows = 300;
    db.config.image_cols = 260;
    db.config.layout = {rng() % 261, 3 * static_cast<std::size_t>(db.config.k_level) + 1};
    for (std::size_t i = 0, n = 1 + rng() % 20; i < n; ++i) {
      LabeledFeature e;
      e.feature.layout = db.config.layout;
      for (std::size_t j = 0; j < db.config.layout.total(); ++j) {
        e.feature.values.push_back(val(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20));
      }
      e.gender = rng() % 2 ? Gender::Male : Gender::Female;
      e.finger_no = 1 + static_cast<int>(rng() % 10);
      e.source_id = "images/s" + std::to_string(i) + ".pgm";
      db.entries.push_back(std::move(e));
    }
    const auto path = dir / ("db" + std::to_string(t) + ".rgc");
    save_database(db, path);
    const auto back = load_database(path);
    bool bit_exact = back == db;
    for (std::size_t i = 0; bit_exact && i < db.entries.size(); ++i) {
      for (std::size_t j = 0; j < db.entries[i].feature.values.size(); ++j) {
        bit_exact &= std::bit_cast<std::uint64_t>(db.entries[i].feature.values[j]) ==
                     std::bit_cast<std::uint64_t>(back.entries[i].feature.values[j]);
      }
    }
    o.require(bit_exact, "round trip " + std::to_string(t) + " not bit-exact");

    auto bytes = serialize_database(db);
    auto flipped = bytes;
    const std::size_t pos = 4 + rng() % (bytes.size() - 4);
    flipped[pos] = static_cast<char>(flipped[pos] ^ (1 << (rng() % 8)));
    try {
      deserialize_database(flipped);
      o.require(false, "flipped byte accepted");
    } catch (const Error& e) {
      o.require(e.code() == ErrorCode::ChecksumMismatch,
                "flipped byte raised " + std::string(to_string(e.code())));
    }
    auto magic = bytes;
    magic[0] = 'X';
    try {
      deserialize_database(magic);
      o.require(false, "wrong magic accepted");
    } catch (const Error& e) {
      o.require(e.code() == ErrorCode::FormatVersionMismatch,
                "wrong magic raised " + std::string(to_string(e.code())));
    }
  }
  if (o.pass) o.detail = "50 databases bit-exact; flipped byte -> ChecksumMismatch; bad magic -> FormatVersionMismatch";
  return o;
}

// --- shared synthetic dataset ------------------------------------------------------

fs::path synthetic_manifest() {
  static const fs::path manifest = [] {
    const auto dir = oracle::scratch_dir("acceptance_synth");
    std::ostringstream out, err;
    const std::string d = dir.string();
    const char* argv[] = {"ridgeclass", "synth", "--out", d.c_str(), "--male-period", "10",
                          "--female-period", "6", "--count", "60", "--rows", "300", "--cols",
                          "260", "--noise", "10", "--seed", "42"};
    if (cli_main(static_cast<int>(std::size(argv)), argv, out, err) != 0) {
      throw std::runtime_error("synth failed: " + err.str());
    }
    return dir / "manifest.csv";
  }();
  return manifest;
}

// --- 7. end-to-end separability ---------------------------------------------------

Outcome end_to_end() {
  Outcome o;
  ExperimentConfig cfg;
  cfg.split_seed = 42;
  cfg.k_level = 6;
  cfg.knn.k_neighbors = 1;
  SweepAxes axes{{FeatureMode::DwtOnly, FeatureMode::Fused}, {6}, {1}};
  const auto results = run_sweep(synthetic_manifest(), cfg, axes);
  const double dwt = *results[0].report.overall;
  const double fused = *results[1].report.overall;
  o.require(results[1].testing_n == 40, "expected 40 test images, got " +
                                            std::to_string(results[1].testing_n));
  o.require(fused >= 95.0, "fused overall " + format_percent(fused) + "% < 95%");
  o.require(dwt >= 90.0, "DWT-only overall " + format_percent(dwt) + "% < 90%");
  if (o.pass) {
    o.detail = "fused " + format_percent(fused) + "% >= 95%, DWT-only " + format_percent(dwt) +
               "% >= 90% on " + std::to_string(results[1].testing_n) + " test images";
  }
  return o;
}

// --- 8. report fidelity ---------------------------------------------------------------

Outcome report_fidelity() {
  Outcome o;
  ClassificationReport r;
  for (int f = 1; f <= 10; ++f) r.per_finger[f] = {};
  r.per_finger[1].male_acc = 90.15;
  r.per_finger[1].female_acc = 92.05;
  r.per_finger[1].male_n = 132;
  r.per_finger[1].female_n = 88;
  r.male_avg = 90.15;
  r.female_avg = 92.05;
  r.overall = 90.91;
  const auto text = render_report(r, ReportFormat::Text);
  o.require(text.find("Finger No. | Male | Female\n") != std::string::npos, "column header");
  o.require(text.find("\n1 | 90.15 | 92.05\n") != std::string::npos, "row 1 values");
  o.require(text.find("\n5 | \xE2\x80\x94 | \xE2\x80\x94\n") != std::string::npos,
            "absent cells");
  o.require(text.find("\nAverage | ") != std::string::npos, "average row");
  o.require(text.find("\nOverall | ") != std::string::npos, "overall row");

  // Independent recount on outcomes with uneven cells.
  std::mt19937_64 rng(8);
  std::vector<SampleOutcome> outcomes;
  for (int i = 0; i < 500; ++i) {
    const Gender truth = rng() % 3 ? Gender::Male : Gender::Female;
    const Gender pred = rng() % 5 ? truth : (truth == Gender::Male ? Gender::Female : Gender::Male);
    const int finger = 1 + static_cast<int>(rng() % 10);
    if (finger == 4 && truth == Gender::Female) continue;  // leave one cell empty
    outcomes.push_back({"s" + std::to_string(i), finger, truth, pred});
  }
  const auto agg = aggregate(outcomes, {});
  const auto rc = oracle::recount(outcomes);
  o.require(*agg.overall == rc.overall, "overall recount");
  o.require(*agg.male_avg == rc.male_avg, "male average recount");
  o.require(*agg.female_avg == rc.female_avg, "female average recount");
  o.require(!agg.per_finger.at(4).female_acc.has_value(), "empty cell must be absent");
  o.require(parse_report(render_report(agg, ReportFormat::Json), ReportFormat::Json) ==
                parse_report(render_report(agg, ReportFormat::Csv), ReportFormat::Csv),
            "json/csv disagree");
  if (o.pass) o.detail = "row '1 | 90.15 | 92.05'; recount exact; csv == json";
  return o;
}

// --- 9. determinism ------------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  const auto manifest = synthetic_manifest().string();
  auto evaluate = [&](const char* format) {
    std::ostringstream out, err;
    const char* argv[] = {"ridgeclass", "evaluate", "--manifest", manifest.c_str(), "--mode",
                          "fused", "--level", "6", "--k", "1", "--seed", "42", "--format",
                          format};
    const int code = cli_main(static_cast<int>(std::size(argv)), argv, out, err);
    if (code != 0) throw std::runtime_error("evaluate failed: " + err.str());
    return out.str();
  };
  const auto a = evaluate("text");
  const auto b = evaluate("text");
  o.require(a == b, "text reports differ");
  o.require(a.find("Finger No. | Male | Female") != std::string::npos, "not a table");
  if (o.pass) o.detail = "two evaluate runs byte-identical (" + std::to_string(a.size()) + " bytes)";
  return o;
}

struct Criterion {
  const char* name;
  double bound_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"feature-length contract", 1.0, feature_lengths},
      {"sub-band energy oracle", 1.0, energy_oracle},
      {"DWT numerics", 5.0, dwt_numerics},
      {"SVD oracle and invariances", 30.0, svd_oracle},
      {"KNN oracle", 10.0, knn_oracle},
      {"persistence", 5.0, persistence},
      {"end-to-end synthetic separability", 60.0, end_to_end},
      {"report fidelity", 1.0, report_fidelity},
      {"determinism", 0.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.bound_seconds > 0.0 && secs > c.bound_seconds && o.pass) {
      o.pass = false;
      o.detail = "too slow";
    }
    char timing[64];
    if (c.bound_seconds > 0.0) {
      std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.bound_seconds);
    } else {
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << timing << "]  "
              << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : "acceptance FAILED") << " ("
            << criteria.size() - failures << "/" << criteria.size() << ")" << std::endl;
  return failures == 0 ? 0 : 1;
}
