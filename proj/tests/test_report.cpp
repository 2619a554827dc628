#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "atlas/errors.hpp"
#include "atlas/report.hpp"
#include "atlas/survey.hpp"

namespace fs = std::filesystem;
using atlas::SurveyConfig;
using atlas::SurveyRecord;

namespace {

SurveyConfig tiny_config() {
  SurveyConfig cfg;
  cfg.n1 = 2;
  cfg.n2_min = 2;
  cfg.n2_max = 4;
  cfg.samples_per_dim = 500;
  cfg.seed = 99;
  return cfg;
}

const std::vector<SurveyRecord>& tiny_records() {
  static const std::vector<SurveyRecord> records = atlas::run_survey(tiny_config());
  return records;
}

// Strict-enough XML well-formedness check for the SVG we emit: every tag
// closes, nesting matches, attribute quotes balance.
bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    std::size_t end = text.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    if (tag.back() == '/') continue;  // self-closing
    std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
    stack.push_back(name);
  }
  return stack.empty();
}

fs::path temp_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / ("atlas-report-" + leaf);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_double survives a parse round trip") {
  for (double v : {0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324,
                   0.0839, 123456.789, -2.2250738585072014e-308}) {
    const std::string s = atlas::format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find("inf") == std::string::npos);
  }
  CHECK(atlas::format_double(0.25) == "0.25");
  CHECK(atlas::format_double(42.0) == "42");
}

TEST_CASE("csv renders the full label grid and parses back exactly") {
  const auto& records = tiny_records();
  const std::string csv = atlas::render_csv(records, tiny_config());
  CHECK(csv.rfind(atlas::kCsvHeader, 0) == 0);

  const auto rows = atlas::parse_csv(csv);
  const auto labels = atlas::survey_labels(false);
  REQUIRE(rows.size() == records.size() * labels.size());

  std::size_t r = 0;
  for (const auto& rec : records) {
    for (const auto& label : labels) {
      const auto& row = rows[r++];
      CHECK(row.n1 == 2);
      CHECK(row.n2 == rec.dims.n_b);
      CHECK(row.total_dim == rec.dims.total());
      CHECK(row.samples == rec.samples);
      CHECK(row.label == label);
      CHECK(row.count == rec.count(label));
      CHECK(row.probability == rec.probability(label));
      CHECK(row.std_error == rec.std_error(label));
      CHECK(row.boundary_count == rec.boundary_count(label));
    }
  }
}

TEST_CASE("csv with finite q carries the two extra labels") {
  SurveyConfig cfg = tiny_config();
  cfg.n2_max = 2;
  cfg.q_finite = 2.0;
  const auto records = atlas::run_survey(cfg);
  const auto rows = atlas::parse_csv(atlas::render_csv(records, cfg));
  CHECK(rows.size() == atlas::survey_labels(true).size());
  std::set<std::string> seen;
  for (const auto& row : rows) seen.insert(row.label);
  CHECK(seen.count("q_entropic_finite") == 1);
  CHECK(seen.count("vio_reduction_implies_qfinite") == 1);
}

TEST_CASE("parse_csv rejects malformed input") {
  CHECK_THROWS_AS(atlas::parse_csv("a,b,c\n1,2,3\n"), atlas::IOFailure);
  std::string bad = atlas::kCsvHeader;
  bad += "\n2,2,4,100,ppt,50\n";  // six fields instead of nine
  CHECK_THROWS_AS(atlas::parse_csv(bad), atlas::IOFailure);
  std::string garbled = atlas::kCsvHeader;
  garbled += "\n2,2,4,100,ppt,fifty,0.5,0.05,0\n";
  CHECK_THROWS_AS(atlas::parse_csv(garbled), atlas::IOFailure);
  CHECK(atlas::parse_csv(std::string(atlas::kCsvHeader) + "\n").empty());
}

TEST_CASE("json mirror matches the csv content") {
  const auto& records = tiny_records();
  const auto parsed = nlohmann::json::parse(atlas::render_json(records, tiny_config()));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == records.size() * atlas::survey_labels(false).size());
  const auto& first = parsed.at(0);
  CHECK(first.at("n1") == 2);
  CHECK(first.at("n2") == 2);
  CHECK(first.at("N") == 4);
  CHECK(first.at("samples") == 500);
  CHECK(first.at("label") == "ppt");
  CHECK(first.at("count") == tiny_records().front().count("ppt"));
  CHECK(first.at("probability").get<double>() == tiny_records().front().probability("ppt"));
}

TEST_CASE("manifest round trips through its serialization") {
  SurveyConfig cfg = tiny_config();
  const auto manifest = atlas::make_manifest(cfg, tiny_records());
  const auto back = atlas::parse_manifest(atlas::render_manifest(manifest));
  CHECK(back.config == cfg);
  CHECK(back.version == atlas::kToolVersion);
  CHECK(back.timestamp == manifest.timestamp);
  CHECK(back.wall_seconds_per_dim.size() == tiny_records().size());

  cfg.q_finite = 1.5;
  cfg.workers = 3;
  const auto with_q = atlas::parse_manifest(
      atlas::render_manifest(atlas::make_manifest(cfg, tiny_records())));
  CHECK(with_q.config == cfg);
}

TEST_CASE("parse_manifest rejects junk") {
  CHECK_THROWS_AS(atlas::parse_manifest("not json"), atlas::ConfigInvalid);
  CHECK_THROWS_AS(atlas::parse_manifest("{\"tool\":\"other\"}"), atlas::ConfigInvalid);
}

TEST_CASE("write_file and read_file round trip") {
  const fs::path dir = temp_dir("io");
  fs::create_directories(dir);
  const fs::path file = dir / "payload.txt";
  const std::string content = "line one\nline two\n";
  atlas::write_file(file, content);
  CHECK(atlas::read_file(file) == content);
  CHECK_THROWS_AS(atlas::read_file(dir / "absent.txt"), atlas::IOFailure);
  fs::remove_all(dir);
}

TEST_CASE("svg output is well formed and escapes markup") {
  atlas::PlotSpec spec;
  spec.title = "a <&> \"quoted\" 'title'";
  spec.x_label = "n2";
  spec.y_label = "p";
  spec.series.push_back({"s&1", {{2, 0.5, 0.01}, {3, 0.25, 0.01}, {4, 0.125, 0.01}}});
  spec.series.push_back({"s<2", {{2, 0.4, 0.0}, {3, 0.3, 0.0}}});
  const std::string svg = atlas::render_svg(spec);
  CHECK(xml_well_formed(svg));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("a <&>") == std::string::npos);   // raw markup must not leak
  CHECK(svg.find("&lt;&amp;&gt;") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("single-point series still renders a marker") {
  atlas::PlotSpec spec;
  spec.title = "one point";
  spec.series.push_back({"only", {{2, 0.5, 0.05}}});
  const std::string svg = atlas::render_svg(spec);
  CHECK(xml_well_formed(svg));
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("log scale drops nonpositive points without emitting junk") {
  atlas::PlotSpec spec;
  spec.title = "log";
  spec.log_y = true;
  spec.series.push_back({"decay", {{2, 0.5, 0.0}, {3, 0.0, 0.0}, {4, 0.05, 0.0}, {5, 0.01, 0.0}}});
  const std::string svg = atlas::render_svg(spec);
  CHECK(xml_well_formed(svg));
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("marker height tracks the plotted probability") {
  // SVG y grows downward, so a decreasing series must have increasing cy.
  const std::string svg = [&] {
    atlas::PlotSpec spec;
    spec.title = "ppt";
    spec.series.push_back({"p", {{2, 0.8, 0.0}, {3, 0.4, 0.0}, {4, 0.2, 0.0}}});
    return atlas::render_svg(spec);
  }();
  std::vector<double> cys;
  std::size_t pos = 0;
  while ((pos = svg.find("<circle", pos)) != std::string::npos) {
    const std::size_t cy = svg.find("cy=\"", pos);
    REQUIRE(cy != std::string::npos);
    cys.push_back(std::strtod(svg.c_str() + cy + 4, nullptr));
    pos = cy;
  }
  REQUIRE(cys.size() == 3);
  CHECK(cys[0] < cys[1]);
  CHECK(cys[1] < cys[2]);
}

TEST_CASE("emit_plots writes one well-formed chart per family") {
  const fs::path dir = temp_dir("plots");
  const auto paths = atlas::emit_plots(tiny_records(), dir);
  CHECK(paths.size() == 10);
  std::set<std::string> names;
  for (const auto& p : paths) {
    names.insert(p.filename().string());
    CHECK(fs::exists(p));
    CHECK(xml_well_formed(atlas::read_file(p)));
  }
  CHECK(names.count("ppt_probability.svg") == 1);
  CHECK(names.count("ppt_probability_semilog.svg") == 1);
  CHECK(names.count("agreement_all.svg") == 1);
  CHECK(names.count("criterion_violations.svg") == 1);
  fs::remove_all(dir);
}

TEST_CASE("emit_plots refuses an empty record list") {
  const fs::path dir = temp_dir("empty");
  CHECK_THROWS_AS(atlas::emit_plots({}, dir), atlas::ConfigInvalid);
  CHECK(!fs::exists(dir));
}
