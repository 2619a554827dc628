#pragma once

// Serialization of survey results (CSV, JSON mirror, run manifest) and the
// static SVG charts. CSV numbers use round-trip decimal formatting so parsing
// an emitted file reconstructs every value exactly.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "atlas/survey.hpp"

namespace atlas {

inline constexpr const char* kToolName = "entangle-atlas";
inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr const char* kCsvHeader =
    "n1,n2,N,samples,label,count,probability,std_error,boundary_count";

struct RunManifest {
  SurveyConfig config;
  std::string version = kToolVersion;
  std::string timestamp;  // UTC, RFC 3339
  std::vector<double> wall_seconds_per_dim;
};

RunManifest make_manifest(const SurveyConfig& cfg, const std::vector<SurveyRecord>& records);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

std::string render_csv(const std::vector<SurveyRecord>& records, const SurveyConfig& cfg);
std::string render_json(const std::vector<SurveyRecord>& records, const SurveyConfig& cfg);
std::string render_manifest(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& text);

struct CsvRow {
  int n1 = 0;
  int n2 = 0;
  int total_dim = 0;
  std::int64_t samples = 0;
  std::string label;
  std::int64_t count = 0;
  double probability = 0.0;
  double std_error = 0.0;
  std::int64_t boundary_count = 0;
};

std::vector<CsvRow> parse_csv(const std::string& text);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  double err = 0.0;
};

struct PlotSeries {
  std::string name;
  std::vector<PlotPoint> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  bool log_y = false;  // log scale skips points with y <= 0
};

// Minimal self-contained SVG line chart with +-1 sigma error bars.
std::string render_svg(const PlotSpec& spec);

// Writes one chart per tracked statistic family into out_dir and returns the
// file paths. Throws ConfigInvalid on an empty record list (before touching
// the filesystem) and IOFailure on write errors.
std::vector<std::filesystem::path> emit_plots(const std::vector<SurveyRecord>& records,
                                              const std::filesystem::path& out_dir);

}  // namespace atlas
