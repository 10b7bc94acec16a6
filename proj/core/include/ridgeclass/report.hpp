#pragma once

#include <string>
#include <string_view>

#include "ridgeclass/experiment.hpp"

namespace ridgeclass {

enum class ReportFormat { Text, Csv, Json };

ReportFormat parse_report_format(std::string_view text);

/// Percent with two decimals; ties go to even.
std::string format_percent(double value);

/// Text: one "finger | male | female" row per finger, then Average and
/// Overall rows; absent cells print an em dash. Csv and Json carry the same
/// numbers in shortest round-trip form plus the raw counts and the config.
std::string render_report(const ClassificationReport& report, ReportFormat format);

/// Inverse of render_report for Csv and Json.
ClassificationReport parse_report(std::string_view text, ReportFormat format);

}  // namespace ridgeclass
