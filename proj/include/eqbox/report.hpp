#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eqbox/io.hpp"

namespace eqbox {

/// UPPER: certified upper bound. ORACLE: grid value, true value within err.
/// LOWER: certified lower bound. MARGIN: slack of a checked inequality.
enum class BoundKind { Upper, Oracle, Lower, Margin };

std::string bound_kind_name(BoundKind k);

struct ReportRow {
  std::string instance;
  std::string metric;
  double value = 0.0;
  BoundKind kind = BoundKind::Upper;
  double err = 0.0;
  std::uint64_t seed = 0;
  /// Left at 0 unless timing is requested, so reports stay byte-stable.
  double wall_ms = 0.0;
};

struct ExperimentReport {
  std::string title;
  std::vector<ReportRow> rows;
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Header "instance,metric,value,kind,err,seed,wall_ms" then one line per row.
std::string to_csv(const ExperimentReport& r);
Json to_json(const ExperimentReport& r);
/// Line chart with one polyline per metric, x = row position within the metric.
std::string to_svg(const ExperimentReport& r);

/// Writes <stem>.csv / .json / .svg for each requested format ("csv", "json",
/// "svg"). Throws IoError.
std::vector<std::filesystem::path> emit_report(const ExperimentReport& r, const std::vector<std::string>& formats,
                                               const std::filesystem::path& stem);

}  // namespace eqbox
