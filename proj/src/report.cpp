#include "atlas/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "atlas/errors.hpp"

namespace atlas {

namespace {

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

RunManifest make_manifest(const SurveyConfig& cfg, const std::vector<SurveyRecord>& records) {
  RunManifest manifest;
  manifest.config = cfg;
  manifest.timestamp = utc_now();
  manifest.wall_seconds_per_dim.reserve(records.size());
  for (const auto& rec : records) {
    manifest.wall_seconds_per_dim.push_back(rec.wall_seconds);
  }
  return manifest;
}

std::string render_csv(const std::vector<SurveyRecord>& records, const SurveyConfig& cfg) {
  std::string out = kCsvHeader;
  out += '\n';
  const auto labels = survey_labels(cfg.q_finite.has_value());
  for (const auto& rec : records) {
    for (const auto& label : labels) {
      out += std::to_string(rec.dims.n_a);
      out += ',';
      out += std::to_string(rec.dims.n_b);
      out += ',';
      out += std::to_string(rec.dims.total());
      out += ',';
      out += std::to_string(rec.samples);
      out += ',';
      out += label;
      out += ',';
      out += std::to_string(rec.count(label));
      out += ',';
      out += format_double(rec.probability(label));
      out += ',';
      out += format_double(rec.std_error(label));
      out += ',';
      out += std::to_string(rec.boundary_count(label));
      out += '\n';
    }
  }
  return out;
}

std::string render_json(const std::vector<SurveyRecord>& records, const SurveyConfig& cfg) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const auto labels = survey_labels(cfg.q_finite.has_value());
  for (const auto& rec : records) {
    for (const auto& label : labels) {
      rows.push_back({
          {"n1", rec.dims.n_a},
          {"n2", rec.dims.n_b},
          {"N", rec.dims.total()},
          {"samples", rec.samples},
          {"label", label},
          {"count", rec.count(label)},
          {"probability", rec.probability(label)},
          {"std_error", rec.std_error(label)},
          {"boundary_count", rec.boundary_count(label)},
      });
    }
  }
  return rows.dump(2) + "\n";
}

std::string render_manifest(const RunManifest& manifest) {
  nlohmann::ordered_json config;
  config["n1"] = manifest.config.n1;
  config["n2_min"] = manifest.config.n2_min;
  config["n2_max"] = manifest.config.n2_max;
  config["samples"] = manifest.config.samples_per_dim;
  config["seed"] = manifest.config.seed;
  config["workers"] = manifest.config.workers;
  if (manifest.config.q_finite) {
    config["q"] = *manifest.config.q_finite;
  } else {
    config["q"] = nullptr;
  }
  config["tol"] = manifest.config.crit_tol;

  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = manifest.version;
  j["timestamp"] = manifest.timestamp;
  j["config"] = std::move(config);
  j["wall_seconds_per_dim"] = manifest.wall_seconds_per_dim;
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunManifest manifest;
    manifest.version = j.value("version", "");
    manifest.timestamp = j.value("timestamp", "");
    const auto& config = j.at("config");
    manifest.config.n1 = config.at("n1").get<int>();
    manifest.config.n2_min = config.at("n2_min").get<int>();
    manifest.config.n2_max = config.at("n2_max").get<int>();
    manifest.config.samples_per_dim = config.at("samples").get<std::int64_t>();
    manifest.config.seed = config.at("seed").get<std::uint64_t>();
    manifest.config.workers = config.at("workers").get<int>();
    if (config.contains("q") && !config.at("q").is_null()) {
      manifest.config.q_finite = config.at("q").get<double>();
    }
    manifest.config.crit_tol = config.value("tol", tolerance::kCrit);
    if (j.contains("wall_seconds_per_dim")) {
      manifest.wall_seconds_per_dim = j.at("wall_seconds_per_dim").get<std::vector<double>>();
    }
    return manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("manifest parse failure: ") + e.what());
  }
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw IOFailure("unrecognized CSV header");
  }
  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    if (fields.size() != 9) {
      throw IOFailure("CSV line " + std::to_string(lineno) + ": expected 9 fields, got " +
                      std::to_string(fields.size()));
    }
    try {
      CsvRow row;
      row.n1 = std::stoi(fields[0]);
      row.n2 = std::stoi(fields[1]);
      row.total_dim = std::stoi(fields[2]);
      row.samples = std::stoll(fields[3]);
      row.label = fields[4];
      row.count = std::stoll(fields[5]);
      row.probability = std::stod(fields[6]);
      row.std_error = std::stod(fields[7]);
      row.boundary_count = std::stoll(fields[8]);
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw IOFailure("CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IOFailure("cannot open " + path.string() + " for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    throw IOFailure("write failed: " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IOFailure("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

constexpr double kW = 640.0;
constexpr double kH = 440.0;
constexpr double kMarginL = 66.0;
constexpr double kMarginR = 18.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 52.0;

const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  return palette[i % (sizeof palette / sizeof palette[0])];
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double nice_step(double raw) {
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double nice = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
  return nice * mag;
}

void draw_line(std::ostringstream& svg, double x1, double y1, double x2, double y2,
               const char* stroke, const char* width = "1") {
  svg << "<line x1=\"" << coord(x1) << "\" y1=\"" << coord(y1) << "\" x2=\"" << coord(x2)
      << "\" y2=\"" << coord(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
      << "\"/>\n";
}

void draw_text(std::ostringstream& svg, double x, double y, const std::string& text,
               const char* anchor = "middle", const char* extra = "") {
  svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" text-anchor=\"" << anchor
      << "\"" << extra << ">" << xml_escape(text) << "</text>\n";
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
  bool any = false;
  std::set<double> x_values;
  for (const auto& series : spec.series) {
    for (const auto& p : series.points) {
      if (spec.log_y && !(p.y > 0.0)) {
        continue;
      }
      x_values.insert(p.x);
      const double lo = spec.log_y ? p.y : p.y - p.err;
      const double hi = p.y + p.err;
      if (!any) {
        xlo = xhi = p.x;
        ylo = lo;
        yhi = hi;
        any = true;
      } else {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, lo);
        yhi = std::max(yhi, hi);
      }
    }
  }
  if (!any) {
    xlo = 0.0;
    xhi = 1.0;
    ylo = spec.log_y ? 0.1 : 0.0;
    yhi = 1.0;
  }
  if (xhi <= xlo) {
    xlo -= 1.0;
    xhi += 1.0;
  }
  if (spec.log_y) {
    if (yhi <= ylo) {
      ylo *= 0.5;
      yhi *= 2.0;
    }
    ylo *= 0.8;
    yhi *= 1.15;
  } else {
    ylo = std::min(ylo, 0.0);
    if (yhi <= ylo) {
      yhi = ylo + 1.0;
    }
    yhi += 0.06 * (yhi - ylo);
  }

  const double plot_w = kW - kMarginL - kMarginR;
  const double plot_h = kH - kMarginT - kMarginB;
  const auto mx = [&](double x) { return kMarginL + (x - xlo) / (xhi - xlo) * plot_w; };
  const auto my = [&](double y) {
    const double t = spec.log_y
                         ? (std::log10(y) - std::log10(ylo)) / (std::log10(yhi) - std::log10(ylo))
                         : (y - ylo) / (yhi - ylo);
    return kH - kMarginB - t * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"#ffffff\"/>\n";

  draw_line(svg, kMarginL, kH - kMarginB, kW - kMarginR, kH - kMarginB, "#333333");
  draw_line(svg, kMarginL, kMarginT, kMarginL, kH - kMarginB, "#333333");

  // x ticks: one per data abscissa when few, nice steps otherwise
  std::vector<double> xticks(x_values.begin(), x_values.end());
  if (xticks.size() > 12 || xticks.empty()) {
    xticks.clear();
    const double step = nice_step((xhi - xlo) / 6.0);
    for (double t = std::ceil(xlo / step) * step; t <= xhi + step * 1e-9; t += step) {
      xticks.push_back(t);
    }
  }
  for (const double t : xticks) {
    const double px = mx(t);
    draw_line(svg, px, kH - kMarginB, px, kH - kMarginB + 5, "#333333");
    draw_text(svg, px, kH - kMarginB + 18, tick_text(t));
  }

  std::vector<double> yticks;
  if (spec.log_y) {
    for (int k = static_cast<int>(std::ceil(std::log10(ylo)));
         k <= static_cast<int>(std::floor(std::log10(yhi))); ++k) {
      yticks.push_back(std::pow(10.0, k));
    }
    if (yticks.size() < 2) {
      yticks = {ylo, yhi};
    }
  } else {
    const double step = nice_step((yhi - ylo) / 4.0);
    for (double t = std::ceil(ylo / step) * step; t <= yhi + step * 1e-9; t += step) {
      yticks.push_back(t);
    }
  }
  for (const double t : yticks) {
    const double py = my(t);
    draw_line(svg, kMarginL - 5, py, kMarginL, py, "#333333");
    draw_text(svg, kMarginL - 8, py + 4, tick_text(t), "end");
  }

  draw_text(svg, kW / 2.0, 20.0, spec.title, "middle", " font-size=\"14\"");
  draw_text(svg, kMarginL + plot_w / 2.0, kH - 14.0, spec.x_label);
  svg << "<text transform=\"translate(16," << coord(kMarginT + plot_h / 2.0)
      << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(spec.y_label) << "</text>\n";

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& series = spec.series[si];
    const char* color = series_color(si);
    std::vector<std::pair<double, double>> segment;
    const auto flush_segment = [&]() {
      if (segment.size() >= 2) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [px, py] : segment) {
          svg << coord(px) << "," << coord(py) << " ";
        }
        svg << "\"/>\n";
      }
      segment.clear();
    };
    for (const auto& p : series.points) {
      if (spec.log_y && !(p.y > 0.0)) {
        flush_segment();
        continue;
      }
      const double px = mx(p.x);
      const double py = my(p.y);
      segment.emplace_back(px, py);
      if (p.err > 0.0) {
        const double lo_end = std::max(p.y - p.err, ylo);
        const double hi_end = std::min(p.y + p.err, yhi);
        const double py_lo = my(spec.log_y ? std::max(lo_end, ylo * 1.0000001) : lo_end);
        const double py_hi = my(hi_end);
        draw_line(svg, px, py_lo, px, py_hi, color);
        draw_line(svg, px - 3, py_lo, px + 3, py_lo, color);
        draw_line(svg, px - 3, py_hi, px + 3, py_hi, color);
      }
      svg << "<circle cx=\"" << coord(px) << "\" cy=\"" << coord(py)
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    flush_segment();
  }

  if (spec.series.size() >= 2) {
    const double lx = kW - kMarginR - 190.0;
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
      const double ly = kMarginT + 14.0 + 18.0 * static_cast<double>(si);
      draw_line(svg, lx, ly - 4, lx + 24, ly - 4, series_color(si), "2");
      draw_text(svg, lx + 30, ly, spec.series[si].name, "start");
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit_plots(const std::vector<SurveyRecord>& records,
                                              const std::filesystem::path& out_dir) {
  if (records.empty()) {
    throw ConfigInvalid("no records to plot");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);

  const auto series_for = [&](std::initializer_list<const char*> labels) {
    std::vector<PlotSeries> out;
    for (const char* label : labels) {
      bool present = false;
      PlotSeries series;
      series.name = label;
      for (const auto& rec : records) {
        present = present || rec.counters.count(label) > 0;
        series.points.push_back({static_cast<double>(rec.dims.total()), rec.probability(label),
                                 rec.std_error(label)});
      }
      if (present) {
        out.push_back(std::move(series));
      }
    }
    return out;
  };

  const std::string x_label = "total dimension N";
  const std::string p_label = "probability";
  const std::vector<std::pair<const char*, PlotSpec>> charts = {
      {"ppt_probability.svg",
       {"PPT probability", x_label, p_label, series_for({"ppt"}), false}},
      {"ppt_probability_semilog.svg",
       {"PPT probability, log scale", x_label, p_label, series_for({"ppt"}), true}},
      {"reduction_probability.svg",
       {"Reduction probability", x_label, p_label, series_for({"reduction"}), false}},
      {"majorization_vs_qentropic.svg",
       {"Majorization and q-entropic probabilities", x_label, p_label,
        series_for({"majorization", "q_entropic_inf", "q_entropic_finite"}), false}},
      {"agreement_ppt_reduction.svg",
       {"PPT and reduction agreement", x_label, p_label, series_for({"agree_ppt_reduction"}),
        false}},
      {"agreement_ppt_vs_majorization_qentropic.svg",
       {"PPT agreement with spectral criteria", x_label, p_label,
        series_for({"agree_ppt_majorization", "agree_ppt_qent"}), false}},
      {"agreement_reduction_vs_majorization_qentropic.svg",
       {"Reduction agreement with spectral criteria", x_label, p_label,
        series_for({"agree_reduction_majorization", "agree_reduction_qent"}), false}},
      {"agreement_majorization_qentropic.svg",
       {"Majorization and q-entropic agreement", x_label, p_label,
        series_for({"agree_majorization_qent"}), false}},
      {"agreement_all.svg",
       {"All-criteria agreement", x_label, p_label, series_for({"agree_all"}), false}},
      {"criterion_violations.svg",
       {"Criterion violation probabilities", x_label, p_label,
        series_for({"violate_reduction", "violate_majorization"}), false}},
  };

  std::vector<std::filesystem::path> written;
  written.reserve(charts.size());
  for (const auto& [name, plot_spec] : charts) {
    const std::filesystem::path path = out_dir / name;
    write_file(path, render_svg(plot_spec));
    written.push_back(path);
  }
  return written;
}

}  // namespace atlas
