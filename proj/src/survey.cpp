#include "atlas/survey.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "atlas/criteria.hpp"
#include "atlas/errors.hpp"
#include "atlas/rng.hpp"
#include "atlas/sampling.hpp"

namespace atlas {

namespace {

constexpr std::size_t kMismatchCap = 100;

// Flat per-worker accumulator; folded into the label maps once per block.
struct Tally {
  std::int64_t ppt = 0;
  std::int64_t reduction = 0;
  std::int64_t majorization = 0;
  std::int64_t q_entropic_inf = 0;
  std::int64_t q_entropic_finite = 0;
  std::int64_t rank_separable = 0;
  std::int64_t agree_ppt_reduction = 0;
  std::int64_t agree_ppt_majorization = 0;
  std::int64_t agree_ppt_qent = 0;
  std::int64_t agree_reduction_majorization = 0;
  std::int64_t agree_reduction_qent = 0;
  std::int64_t agree_majorization_qent = 0;
  std::int64_t agree_all = 0;
  std::int64_t violate_reduction = 0;
  std::int64_t violate_majorization = 0;
  std::int64_t vio_ppt_implies_reduction = 0;
  std::int64_t vio_reduction_implies_qent = 0;
  std::int64_t vio_majorization_implies_qent = 0;
  std::int64_t vio_rank_separable_implies_ppt = 0;
  std::int64_t vio_reduction_implies_qfinite = 0;
  std::int64_t b_ppt = 0;
  std::int64_t b_reduction = 0;
  std::int64_t b_majorization = 0;
  std::int64_t b_q_entropic_inf = 0;
  std::int64_t b_q_entropic_finite = 0;

  void add(const CriteriaVerdict& v) {
    ppt += v.ppt;
    reduction += v.reduction;
    majorization += v.majorization;
    q_entropic_inf += v.q_entropic_inf;
    rank_separable += v.rank_separable;
    agree_ppt_reduction += v.ppt == v.reduction;
    agree_ppt_majorization += v.ppt == v.majorization;
    agree_ppt_qent += v.ppt == v.q_entropic_inf;
    agree_reduction_majorization += v.reduction == v.majorization;
    agree_reduction_qent += v.reduction == v.q_entropic_inf;
    agree_majorization_qent += v.majorization == v.q_entropic_inf;
    agree_all += v.ppt == v.reduction && v.reduction == v.majorization &&
                 v.majorization == v.q_entropic_inf;
    violate_reduction += !v.reduction;
    violate_majorization += !v.majorization;
    vio_ppt_implies_reduction += v.ppt && !v.reduction;
    vio_reduction_implies_qent += v.reduction && !v.q_entropic_inf;
    vio_majorization_implies_qent += v.majorization && !v.q_entropic_inf;
    vio_rank_separable_implies_ppt += v.rank_separable && !v.ppt;
    b_ppt += v.boundary.ppt;
    b_reduction += v.boundary.reduction;
    b_majorization += v.boundary.majorization;
    b_q_entropic_inf += v.boundary.q_entropic_inf;
    if (v.q_entropic_finite) {
      q_entropic_finite += *v.q_entropic_finite;
      vio_reduction_implies_qfinite += v.reduction && !*v.q_entropic_finite;
      b_q_entropic_finite += v.boundary.q_entropic_finite;
    }
  }
};

SurveyRecord tally_to_record(const Tally& t, SystemDims dims, std::int64_t samples,
                             bool with_finite_q) {
  SurveyRecord rec;
  rec.dims = dims;
  rec.samples = samples;
  auto& c = rec.counters;
  c["ppt"] = t.ppt;
  c["reduction"] = t.reduction;
  c["majorization"] = t.majorization;
  c["q_entropic_inf"] = t.q_entropic_inf;
  c["rank_separable"] = t.rank_separable;
  c["agree_ppt_reduction"] = t.agree_ppt_reduction;
  c["agree_ppt_majorization"] = t.agree_ppt_majorization;
  c["agree_ppt_qent"] = t.agree_ppt_qent;
  c["agree_reduction_majorization"] = t.agree_reduction_majorization;
  c["agree_reduction_qent"] = t.agree_reduction_qent;
  c["agree_majorization_qent"] = t.agree_majorization_qent;
  c["agree_all"] = t.agree_all;
  c["violate_reduction"] = t.violate_reduction;
  c["violate_majorization"] = t.violate_majorization;
  c["vio_ppt_implies_reduction"] = t.vio_ppt_implies_reduction;
  c["vio_reduction_implies_qent"] = t.vio_reduction_implies_qent;
  c["vio_majorization_implies_qent"] = t.vio_majorization_implies_qent;
  c["vio_rank_separable_implies_ppt"] = t.vio_rank_separable_implies_ppt;
  auto& b = rec.boundary_counts;
  b["ppt"] = t.b_ppt;
  b["reduction"] = t.b_reduction;
  b["majorization"] = t.b_majorization;
  b["q_entropic_inf"] = t.b_q_entropic_inf;
  if (with_finite_q) {
    c["q_entropic_finite"] = t.q_entropic_finite;
    c["vio_reduction_implies_qfinite"] = t.vio_reduction_implies_qfinite;
    b["q_entropic_finite"] = t.b_q_entropic_finite;
  }
  return rec;
}

}  // namespace

std::vector<std::string> survey_labels(bool with_finite_q) {
  std::vector<std::string> labels = {
      "ppt",
      "reduction",
      "majorization",
      "q_entropic_inf",
  };
  if (with_finite_q) {
    labels.push_back("q_entropic_finite");
  }
  labels.insert(labels.end(), {
                                  "rank_separable",
                                  "agree_ppt_reduction",
                                  "agree_ppt_majorization",
                                  "agree_ppt_qent",
                                  "agree_reduction_majorization",
                                  "agree_reduction_qent",
                                  "agree_majorization_qent",
                                  "agree_all",
                                  "violate_reduction",
                                  "violate_majorization",
                                  "vio_ppt_implies_reduction",
                                  "vio_reduction_implies_qent",
                                  "vio_majorization_implies_qent",
                                  "vio_rank_separable_implies_ppt",
                              });
  if (with_finite_q) {
    labels.push_back("vio_reduction_implies_qfinite");
  }
  return labels;
}

std::int64_t SurveyRecord::count(const std::string& label) const {
  const auto it = counters.find(label);
  return it == counters.end() ? 0 : it->second;
}

double SurveyRecord::probability(const std::string& label) const {
  return samples == 0 ? 0.0
                      : static_cast<double>(count(label)) / static_cast<double>(samples);
}

double SurveyRecord::std_error(const std::string& label) const {
  if (samples == 0) {
    return 0.0;
  }
  const double p = probability(label);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

std::int64_t SurveyRecord::boundary_count(const std::string& label) const {
  // violate_* shares its deciding quantity with the criterion it negates.
  std::string key = label;
  if (label == "violate_reduction") key = "reduction";
  if (label == "violate_majorization") key = "majorization";
  const auto it = boundary_counts.find(key);
  return it == boundary_counts.end() ? 0 : it->second;
}

void validate(const SurveyConfig& cfg) {
  if (cfg.n1 != 2 && cfg.n1 != 3) {
    throw ConfigInvalid("n1 must be 2 or 3");
  }
  if (cfg.n2_min < 2 || cfg.n2_max < cfg.n2_min) {
    throw ConfigInvalid("need 2 <= n2_min <= n2_max");
  }
  if (cfg.samples_per_dim < 1) {
    throw ConfigInvalid("samples_per_dim must be positive");
  }
  if (cfg.workers < 1) {
    throw ConfigInvalid("workers must be positive");
  }
  if (cfg.q_finite && (!(*cfg.q_finite > 0.0) || std::isinf(*cfg.q_finite))) {
    throw ConfigInvalid("q must be finite and > 0");
  }
  if (!(cfg.crit_tol >= 0.0)) {
    throw ConfigInvalid("crit_tol must be >= 0");
  }
}

std::vector<SurveyRecord> run_survey(const SurveyConfig& cfg, const ProgressFn& progress) {
  validate(cfg);
  if (cfg.samples_per_dim < 1000) {
    std::fprintf(stderr,
                 "warning: %lld samples per dimension; standard errors below 10^3 "
                 "samples are not meaningful\n",
                 static_cast<long long>(cfg.samples_per_dim));
  }

  std::vector<SurveyRecord> records;
  for (int n2 = cfg.n2_min; n2 <= cfg.n2_max; ++n2) {
    const SystemDims dims{cfg.n1, n2};
    const std::uint64_t dim_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(cfg.n1),
                                               static_cast<std::uint64_t>(n2));
    const std::int64_t total = cfg.samples_per_dim;
    const int workers = static_cast<int>(
        std::min<std::int64_t>(cfg.workers, std::max<std::int64_t>(total, 1)));

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<SurveyRecord> partials(workers);
    std::vector<std::exception_ptr> failures(workers);
    auto work = [&](int w) {
      const std::int64_t begin = total * w / workers;
      const std::int64_t end = total * (w + 1) / workers;
      Tally tally;
      std::vector<std::uint64_t> mismatches;
      std::int64_t i = begin;
      try {
        for (; i < end; ++i) {
          RandomStream rng(dim_seed, static_cast<std::uint64_t>(i));
          const DensityMatrix rho = sample_state({dims, dim_seed, static_cast<std::uint64_t>(i)}, rng);
          const CriteriaVerdict v = evaluate_all(rho, cfg.q_finite, cfg.crit_tol);
          tally.add(v);
          if (cfg.n1 == 2 && v.ppt != v.reduction && mismatches.size() < kMismatchCap) {
            mismatches.push_back(static_cast<std::uint64_t>(i));
          }
        }
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << e.what() << " [replay: dims " << dims.n_a << "x" << dims.n_b << ", seed "
           << cfg.seed << ", sample index " << i << "]";
        failures[w] = std::make_exception_ptr(ConvergenceFailure(os.str()));
        return;
      }
      partials[w] = tally_to_record(tally, dims, end - begin, cfg.q_finite.has_value());
      partials[w].ppt_reduction_mismatches = std::move(mismatches);
    };

    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back(work, w);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    for (const auto& failure : failures) {
      if (failure) {
        std::rethrow_exception(failure);
      }
    }

    SurveyRecord merged = merge_records(partials);
    merged.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) {
      progress(merged);
    }
    records.push_back(std::move(merged));
  }
  return records;
}

SurveyRecord merge_records(const std::vector<SurveyRecord>& partials) {
  if (partials.empty()) {
    throw ConfigInvalid("cannot merge an empty record list");
  }
  SurveyRecord out;
  out.dims = partials.front().dims;
  for (const auto& part : partials) {
    if (!(part.dims == out.dims)) {
      throw DimensionMismatch("cannot merge records with different dims");
    }
    out.samples += part.samples;
    for (const auto& [label, n] : part.counters) {
      out.counters[label] += n;
    }
    for (const auto& [label, n] : part.boundary_counts) {
      out.boundary_counts[label] += n;
    }
    out.wall_seconds += part.wall_seconds;
    for (const std::uint64_t idx : part.ppt_reduction_mismatches) {
      if (out.ppt_reduction_mismatches.size() < kMismatchCap) {
        out.ppt_reduction_mismatches.push_back(idx);
      }
    }
  }
  return out;
}

}  // namespace atlas
