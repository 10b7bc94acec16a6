#include <doctest.h>

#include <json.hpp>

#include "ridgeclass/error.hpp"
#include "ridgeclass/report.hpp"

using namespace ridgeclass;

namespace {

ClassificationReport table2_like() {
  ClassificationReport r;
  for (int f = 1; f <= 10; ++f) r.per_finger[f] = {};
  r.per_finger[1].male_acc = 90.15;
  r.per_finger[1].female_acc = 92.05;
  r.per_finger[1].male_n = 132;
  r.per_finger[1].female_n = 88;
  r.per_finger[2].male_acc = 84.09;
  r.per_finger[2].male_n = 44;
  r.male_avg = 87.12;
  r.female_avg = 92.05;
  r.overall = 88.28;
  r.total_n = 264;
  r.total_correct = 233;
  r.config.k_level = 6;
  r.config.split_seed = 42;
  return r;
}

}  // namespace

TEST_CASE("format_percent") {
  CHECK(format_percent(90.15) == "90.15");
  CHECK(format_percent(100.0) == "100.00");
  CHECK(format_percent(0.0) == "0.00");
  CHECK(format_percent(200.0 / 3.0) == "66.67");
  // Exact binary ties round to even.
  CHECK(format_percent(3.125) == "3.12");
  CHECK(format_percent(3.375) == "3.38");
  CHECK(format_percent(0.625) == "0.62");
}

TEST_CASE("text table has the finger / male / female shape") {
  const auto text = render_report(table2_like(), ReportFormat::Text);
  CHECK(text.find("Finger No. | Male | Female\n") != std::string::npos);
  CHECK(text.find("\n1 | 90.15 | 92.05\n") != std::string::npos);
  CHECK(text.find("\n2 | 84.09 | \xE2\x80\x94\n") != std::string::npos);
  CHECK(text.find("\n10 | \xE2\x80\x94 | \xE2\x80\x94\n") != std::string::npos);
  CHECK(text.find("\nAverage | 87.12 | 92.05\n") != std::string::npos);
  CHECK(text.find("\nOverall | 88.28\n") != std::string::npos);
  CHECK(text.find("mode=fused level=6 k=1 seed=42") != std::string::npos);
}

TEST_CASE("csv and json parse back to the same report") {
  auto r = table2_like();
  r.per_finger[3].male_acc = 100.0 / 3.0;
  r.per_finger[3].male_n = 3;
  r.per_finger[3].male_correct = 1;
  r.config.crop = Region{1, 2, 3, 4};
  r.config.normalize = true;
  r.config.per_finger_db = true;
  r.config.feature_mode = FeatureMode::DwtOnly;
  r.config.split_seed = 18446744073709551615ULL;
  const auto from_csv = parse_report(render_report(r, ReportFormat::Csv), ReportFormat::Csv);
  const auto from_json = parse_report(render_report(r, ReportFormat::Json), ReportFormat::Json);
  CHECK(from_csv == r);
  CHECK(from_json == r);
  CHECK(from_csv == from_json);
}

TEST_CASE("json field names") {
  const auto j = nlohmann::json::parse(render_report(table2_like(), ReportFormat::Json));
  CHECK(j.at("overall").get<double>() == 88.28);
  CHECK(j.at("per_finger").at(0).at("finger") == 1);
  CHECK(j.at("per_finger").at(1).at("female_acc").is_null());
  CHECK(j.at("config").at("mode") == "fused");
}

TEST_CASE("format parsing") {
  CHECK(parse_report_format("csv") == ReportFormat::Csv);
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
  CHECK_THROWS_AS(parse_report("x", ReportFormat::Text), Error);
  CHECK_THROWS_AS(parse_report("{", ReportFormat::Json), Error);
}
