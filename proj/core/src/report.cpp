#include "ridgeclass/report.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ridgeclass/error.hpp"

namespace ridgeclass {

namespace {

using nlohmann::json;

constexpr std::string_view kAbsent = "\xE2\x80\x94";  // em dash

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string cell_text(const std::optional<double>& v) {
  return v ? format_percent(*v) : std::string(kAbsent);
}

std::string opt_shortest(const std::optional<double>& v) { return v ? shortest(*v) : ""; }

std::string config_line(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "mode=" << to_string(c.feature_mode) << " level=" << c.k_level
      << " k=" << c.knn.k_neighbors << " seed=" << c.split_seed << " wavelet=" << c.wavelet
      << " boundary=" << c.boundary << " normalize=" << (c.normalize ? "zscore" : "off")
      << " db=" << (c.per_finger_db ? "per-finger" : "pooled");
  if (c.crop) {
    out << " crop=" << c.crop->top << ',' << c.crop->left << ',' << c.crop->height << ','
        << c.crop->width;
  }
  return out.str();
}

template <typename T>
T parse_num(std::string_view s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::optional<double> parse_opt(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return parse_num<double>(s, "number");
}

ExperimentConfig parse_config_line(std::string_view line) {
  ExperimentConfig c;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "bad config token " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "mode") c.feature_mode = parse_feature_mode(value);
    else if (key == "level") c.k_level = parse_num<int>(value, "level");
    else if (key == "k") c.knn.k_neighbors = parse_num<std::size_t>(value, "k");
    else if (key == "seed") c.split_seed = parse_num<std::uint64_t>(value, "seed");
    else if (key == "wavelet") c.wavelet = value;
    else if (key == "boundary") c.boundary = value;
    else if (key == "normalize") c.normalize = value == "zscore";
    else if (key == "db") c.per_finger_db = value == "per-finger";
    else if (key == "crop") c.crop = parse_region(value);
    else throw Error(ErrorCode::ParseError, "unknown config key " + key);
  }
  return c;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> json_opt(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string render_text(const ClassificationReport& r) {
  std::ostringstream out;
  out << "Gender classification rate (%)\n";
  out << config_line(r.config) << '\n';
  out << "Finger No. | Male | Female\n";
  std::size_t male_n = 0;
  std::size_t female_n = 0;
  for (const auto& [finger, cell] : r.per_finger) {
    out << finger << " | " << cell_text(cell.male_acc) << " | " << cell_text(cell.female_acc)
        << '\n';
    male_n += cell.male_n;
    female_n += cell.female_n;
  }
  out << "Average | " << cell_text(r.male_avg) << " | " << cell_text(r.female_avg) << '\n';
  out << "Overall | " << cell_text(r.overall) << '\n';
  out << "Tested | " << male_n << " | " << female_n << '\n';
  return out.str();
}

std::string render_csv(const ClassificationReport& r) {
  std::ostringstream out;
  out << "# " << config_line(r.config) << '\n';
  out << "row,male_acc,female_acc,male_n,male_correct,female_n,female_correct,overall,total_n,"
         "total_correct\n";
  for (const auto& [finger, c] : r.per_finger) {
    out << finger << ',' << opt_shortest(c.male_acc) << ',' << opt_shortest(c.female_acc) << ','
        << c.male_n << ',' << c.male_correct << ',' << c.female_n << ',' << c.female_correct
        << ",,,\n";
  }
  out << "average," << opt_shortest(r.male_avg) << ',' << opt_shortest(r.female_avg)
      << ",,,,,,,\n";
  out << "overall,,,,,,," << opt_shortest(r.overall) << ',' << r.total_n << ',' << r.total_correct
      << '\n';
  return out.str();
}

std::string render_json(const ClassificationReport& r) {
  json j;
  const auto& c = r.config;
  j["config"] = {{"mode", to_string(c.feature_mode)},
                 {"level", c.k_level},
                 {"k", c.knn.k_neighbors},
                 {"seed", c.split_seed},
                 {"wavelet", c.wavelet},
                 {"boundary", c.boundary},
                 {"normalize", c.normalize},
                 {"per_finger_db", c.per_finger_db},
                 {"crop", c.crop ? json::array({c.crop->top, c.crop->left, c.crop->height,
                                                c.crop->width})
                                 : json(nullptr)}};
  json rows = json::array();
  for (const auto& [finger, cell] : r.per_finger) {
    rows.push_back({{"finger", finger},
                    {"male_acc", opt_json(cell.male_acc)},
                    {"female_acc", opt_json(cell.female_acc)},
                    {"male_n", cell.male_n},
                    {"male_correct", cell.male_correct},
                    {"female_n", cell.female_n},
                    {"female_correct", cell.female_correct}});
  }
  j["per_finger"] = rows;
  j["male_avg"] = opt_json(r.male_avg);
  j["female_avg"] = opt_json(r.female_avg);
  j["overall"] = opt_json(r.overall);
  j["total_n"] = r.total_n;
  j["total_correct"] = r.total_correct;
  return j.dump(2) + "\n";
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

ClassificationReport parse_csv(std::string_view text) {
  ClassificationReport r;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      r.config = parse_config_line(std::string_view(line).substr(2));
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    const auto f = split_commas(line);
    if (f.size() != 10) throw Error(ErrorCode::ParseError, "csv row needs 10 fields: " + line);
    if (f[0] == "average") {
      r.male_avg = parse_opt(f[1]);
      r.female_avg = parse_opt(f[2]);
    } else if (f[0] == "overall") {
      r.overall = parse_opt(f[7]);
      r.total_n = parse_num<std::size_t>(f[8], "total_n");
      r.total_correct = parse_num<std::size_t>(f[9], "total_correct");
    } else {
      FingerCell c;
      c.male_acc = parse_opt(f[1]);
      c.female_acc = parse_opt(f[2]);
      c.male_n = parse_num<std::size_t>(f[3], "male_n");
      c.male_correct = parse_num<std::size_t>(f[4], "male_correct");
      c.female_n = parse_num<std::size_t>(f[5], "female_n");
      c.female_correct = parse_num<std::size_t>(f[6], "female_correct");
      r.per_finger[parse_num<int>(f[0], "finger")] = c;
    }
  }
  return r;
}

ClassificationReport parse_json(std::string_view text) {
  ClassificationReport r;
  try {
    const auto j = json::parse(text);
    const auto& c = j.at("config");
    r.config.feature_mode = parse_feature_mode(c.at("mode").get<std::string>());
    r.config.k_level = c.at("level").get<int>();
    r.config.knn.k_neighbors = c.at("k").get<std::size_t>();
    r.config.split_seed = c.at("seed").get<std::uint64_t>();
    r.config.wavelet = c.at("wavelet").get<std::string>();
    r.config.boundary = c.at("boundary").get<std::string>();
    r.config.normalize = c.at("normalize").get<bool>();
    r.config.per_finger_db = c.at("per_finger_db").get<bool>();
    if (!c.at("crop").is_null()) {
      const auto& a = c.at("crop");
      r.config.crop = Region{a.at(0).get<std::size_t>(), a.at(1).get<std::size_t>(),
                             a.at(2).get<std::size_t>(), a.at(3).get<std::size_t>()};
    }
    for (const auto& row : j.at("per_finger")) {
      FingerCell cell;
      cell.male_acc = json_opt(row.at("male_acc"));
      cell.female_acc = json_opt(row.at("female_acc"));
      cell.male_n = row.at("male_n").get<std::size_t>();
      cell.male_correct = row.at("male_correct").get<std::size_t>();
      cell.female_n = row.at("female_n").get<std::size_t>();
      cell.female_correct = row.at("female_correct").get<std::size_t>();
      r.per_finger[row.at("finger").get<int>()] = cell;
    }
    r.male_avg = json_opt(j.at("male_avg"));
    r.female_avg = json_opt(j.at("female_avg"));
    r.overall = json_opt(j.at("overall"));
    r.total_n = j.at("total_n").get<std::size_t>();
    r.total_correct = j.at("total_correct").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report json: ") + e.what());
  }
  return r;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw Error(ErrorCode::InvalidArgument,
              "report format must be text, csv or json, got '" + std::string(text) + "'");
}

std::string format_percent(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 2);
  return std::string(buf, ptr);
}

std::string render_report(const ClassificationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Text: return render_text(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Json: return render_json(report);
  }
  return {};
}

ClassificationReport parse_report(std::string_view text, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return parse_csv(text);
    case ReportFormat::Json: return parse_json(text);
    case ReportFormat::Text: break;
  }
  throw Error(ErrorCode::InvalidArgument, "text reports are not parseable");
}

}  // namespace ridgeclass
