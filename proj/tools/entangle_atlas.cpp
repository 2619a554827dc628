#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "atlas/criteria.hpp"
#include "atlas/entropy.hpp"
#include "atlas/errors.hpp"
#include "atlas/report.hpp"
#include "atlas/state_io.hpp"
#include "atlas/survey.hpp"

namespace {

struct SurveyOpts {
  atlas::SurveyConfig cfg;
  std::string out_dir = ".";
  std::string format = "csv";
  std::string plots = "on";
  std::string manifest_path;
};

int env_workers(int workers) {
  const char* env = std::getenv("ENTANGLE_ATLAS_THREADS");
  if (env == nullptr || *env == '\0') {
    return workers;
  }
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1) {
    throw atlas::ConfigInvalid("ENTANGLE_ATLAS_THREADS must be a positive integer");
  }
  return static_cast<int>(v);
}

nlohmann::ordered_json verdict_json(const atlas::CriteriaVerdict& v) {
  nlohmann::ordered_json j;
  j["ppt"] = v.ppt;
  j["reduction"] = v.reduction;
  j["majorization"] = v.majorization;
  j["q_entropic_inf"] = v.q_entropic_inf;
  if (v.q_entropic_finite) {
    j["q_entropic_finite"] = *v.q_entropic_finite;
  } else {
    j["q_entropic_finite"] = nullptr;
  }
  j["rank_separable"] = v.rank_separable;
  j["distillable"] = v.distillable;
  j["boundary"] = v.boundary.labels();
  return j;
}

nlohmann::ordered_json entropy_json(const atlas::EntropyReport& r) {
  nlohmann::ordered_json j;
  if (std::isinf(r.q)) {
    j["q"] = "inf";
  } else {
    j["q"] = r.q;
  }
  j["omega_q_joint"] = r.omega_q_joint;
  j["omega_q_a"] = r.omega_q_a;
  j["omega_q_b"] = r.omega_q_b;
  j["tsallis_joint"] = r.tsallis_joint;
  j["tsallis_a"] = r.tsallis_a;
  j["tsallis_b"] = r.tsallis_b;
  j["conditional_a_given_b"] = r.conditional_a_given_b;
  j["conditional_b_given_a"] = r.conditional_b_given_a;
  return j;
}

int run_survey_cmd(const SurveyOpts& opts) {
  atlas::SurveyConfig cfg = opts.cfg;
  cfg.workers = env_workers(cfg.workers);
  atlas::validate(cfg);

  const std::filesystem::path out_dir(opts.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);

  const atlas::ProgressFn progress = [](const atlas::SurveyRecord& rec) {
    std::fprintf(stderr, "dims %lldx%lld: %lld samples in %.1f s, p(ppt) = %.4f\n",
                 static_cast<long long>(rec.dims.n_a), static_cast<long long>(rec.dims.n_b),
                 static_cast<long long>(rec.samples), rec.wall_seconds,
                 rec.probability("ppt"));
  };
  const std::vector<atlas::SurveyRecord> records = atlas::run_survey(cfg, progress);

  const std::string stem = "survey_n1=" + std::to_string(cfg.n1);
  std::vector<std::filesystem::path> written;
  if (opts.format == "csv" || opts.format == "both") {
    const auto path = out_dir / (stem + ".csv");
    atlas::write_file(path, atlas::render_csv(records, cfg));
    written.push_back(path);
  }
  if (opts.format == "json" || opts.format == "both") {
    const auto path = out_dir / (stem + ".json");
    atlas::write_file(path, atlas::render_json(records, cfg));
    written.push_back(path);
  }
  const auto manifest_path = out_dir / (stem + ".manifest.json");
  atlas::write_file(manifest_path, atlas::render_manifest(atlas::make_manifest(cfg, records)));
  written.push_back(manifest_path);
  if (opts.plots == "on") {
    const auto plot_paths = atlas::emit_plots(records, out_dir);
    written.insert(written.end(), plot_paths.begin(), plot_paths.end());
  }
  for (const auto& path : written) {
    std::cout << path.string() << "\n";
  }
  return 0;
}

int run_evaluate_cmd(const std::string& state_path, std::optional<int> n1,
                     std::optional<int> n2, std::optional<double> q) {
  const atlas::DensityMatrix rho = atlas::load_state_file(state_path);
  if (n1 && rho.dims.n_a != *n1) {
    throw atlas::DimensionMismatch("state file has n_a = " + std::to_string(rho.dims.n_a) +
                                   ", --n1 is " + std::to_string(*n1));
  }
  if (n2 && rho.dims.n_b != *n2) {
    throw atlas::DimensionMismatch("state file has n_b = " + std::to_string(rho.dims.n_b) +
                                   ", --n2 is " + std::to_string(*n2));
  }

  const atlas::CriteriaVerdict verdict = atlas::evaluate_all(rho, q);

  std::vector<double> q_values = {1.0, 2.0};
  if (q && *q != 1.0 && *q != 2.0) {
    q_values.push_back(*q);
  }
  nlohmann::ordered_json entropy = nlohmann::ordered_json::array();
  for (const double qv : q_values) {
    entropy.push_back(entropy_json(atlas::make_entropy_report(rho, qv)));
  }
  entropy.push_back(
      entropy_json(atlas::make_entropy_report(rho, std::numeric_limits<double>::infinity())));

  nlohmann::ordered_json out;
  out["dims"] = {{"n1", rho.dims.n_a}, {"n2", rho.dims.n_b}, {"N", rho.dims.total()}};
  out["criteria"] = verdict_json(verdict);
  out["entropy"] = std::move(entropy);
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability criteria survey for random bipartite quantum states"};
  app.set_version_flag("--version", atlas::kToolVersion);
  app.require_subcommand(1);

  SurveyOpts opts;
  bool n2_max_given = false;
  std::optional<double> survey_q;
  auto* survey = app.add_subcommand("survey", "Run the Monte Carlo survey over a dimension sweep");
  survey->add_option("--n1", opts.cfg.n1, "Subsystem A dimension")->check(CLI::IsMember({2, 3}));
  survey->add_option("--n2-min", opts.cfg.n2_min, "Smallest subsystem B dimension");
  survey->add_option("--n2-max", opts.cfg.n2_max,
                     "Largest subsystem B dimension (default 8 for n1=2, 7 for n1=3)")
      ->each([&](const std::string&) { n2_max_given = true; });
  survey->add_option("--samples", opts.cfg.samples_per_dim, "Samples per dimension");
  survey->add_option("--seed", opts.cfg.seed, "Master RNG seed");
  survey->add_option("--workers", opts.cfg.workers, "Worker thread count");
  survey->add_option("--q", survey_q, "Also track the finite-q entropic criterion")
      ->check(CLI::PositiveNumber);
  survey->add_option("--tol", opts.cfg.crit_tol, "Criterion decision tolerance");
  survey->add_option("--out-dir", opts.out_dir, "Output directory");
  survey->add_option("--format", opts.format, "Record format")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  survey->add_option("--plots", opts.plots, "Emit SVG charts")
      ->check(CLI::IsMember({"on", "off"}));
  std::string manifest_path;
  survey->add_option("--manifest", manifest_path,
                     "Load the run configuration from a manifest; explicit flags override");

  std::string state_path;
  std::optional<int> eval_n1;
  std::optional<int> eval_n2;
  std::optional<double> eval_q;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate all criteria for one state file");
  evaluate->add_option("--state", state_path, "State file (`n_a n_b` header, `i j re im` lines)")
      ->required();
  evaluate->add_option("--n1", eval_n1, "Expected subsystem A dimension");
  evaluate->add_option("--n2", eval_n2, "Expected subsystem B dimension");
  evaluate->add_option("--q", eval_q, "Extra finite q for the entropy report")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (survey->parsed()) {
      if (!manifest_path.empty()) {
        const atlas::SurveyConfig from_file =
            atlas::parse_manifest(atlas::read_file(manifest_path)).config;
        atlas::SurveyConfig merged = from_file;
        if (survey->count("--n1") > 0) merged.n1 = opts.cfg.n1;
        if (survey->count("--n2-min") > 0) merged.n2_min = opts.cfg.n2_min;
        if (n2_max_given) merged.n2_max = opts.cfg.n2_max;
        if (survey->count("--samples") > 0) merged.samples_per_dim = opts.cfg.samples_per_dim;
        if (survey->count("--seed") > 0) merged.seed = opts.cfg.seed;
        if (survey->count("--workers") > 0) merged.workers = opts.cfg.workers;
        if (survey->count("--tol") > 0) merged.crit_tol = opts.cfg.crit_tol;
        if (survey_q) merged.q_finite = survey_q;
        opts.cfg = merged;
      } else {
        opts.cfg.q_finite = survey_q;
        if (!n2_max_given) {
          opts.cfg.n2_max = opts.cfg.n1 == 2 ? 8 : 7;
        }
      }
      return run_survey_cmd(opts);
    }
    return run_evaluate_cmd(state_path, eval_n1, eval_n2, eval_q);
  } catch (const atlas::ConvergenceFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const atlas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
