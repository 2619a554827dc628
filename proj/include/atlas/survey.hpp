#pragma once

// Monte Carlo harness: streams sampled states through the criteria engine and
// accumulates per-dimension counts, probabilities and binomial standard
// errors for every tracked statistic.
//
// Reproducibility model: sample i of sweep point (n1, n2) is generated from
// substream i of seed derive_seed(master, n1, n2). The partition of samples
// over workers therefore has no effect on the result; identical configs give
// bit-identical records for any worker count.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atlas/types.hpp"

namespace atlas {

struct SurveyConfig {
  int n1 = 2;                          // subsystem-A dimension, 2 or 3
  int n2_min = 2;                      // inclusive sweep range for subsystem B
  int n2_max = 8;
  std::int64_t samples_per_dim = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::optional<double> q_finite;      // adds the finite-q entropic statistic
  double crit_tol = tolerance::kCrit;

  friend bool operator==(const SurveyConfig&, const SurveyConfig&) = default;
};

// Accumulated tallies for one (n1, n2) sweep point. probability() and
// std_error() are derived from the counters, so merged records stay exact.
struct SurveyRecord {
  SystemDims dims;
  std::int64_t samples = 0;
  std::map<std::string, std::int64_t> counters;
  std::map<std::string, std::int64_t> boundary_counts;
  double wall_seconds = 0.0;  // bookkeeping only; never part of the tallies

  // Replay coordinates (sample indices) of any n1=2 sample where PPT and
  // reduction disagreed; expected empty, kept for inspection when not.
  std::vector<std::uint64_t> ppt_reduction_mismatches;

  std::int64_t count(const std::string& label) const;
  double probability(const std::string& label) const;
  double std_error(const std::string& label) const;  // sqrt(p(1-p)/samples)
  std::int64_t boundary_count(const std::string& label) const;
};

// Statistic labels in canonical emission order for a given config.
std::vector<std::string> survey_labels(bool with_finite_q);

// Called after each completed sweep point.
using ProgressFn = std::function<void(const SurveyRecord&)>;

// Runs the sweep n2 = n2_min..n2_max at dims (n1, n2). Throws ConfigInvalid
// on a bad config; numeric failures are rethrown with the offending sample's
// replay coordinates (seed, dims, sample index).
std::vector<SurveyRecord> run_survey(const SurveyConfig& cfg, const ProgressFn& progress = {});

// Sums counter maps of records that share dims; associative and commutative.
SurveyRecord merge_records(const std::vector<SurveyRecord>& partials);

void validate(const SurveyConfig& cfg);

}  // namespace atlas
