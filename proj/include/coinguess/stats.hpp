#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "coinguess/core.hpp"

namespace coinguess {

enum class TargetVerdict { ContainsTarget, MissesTarget, NoTarget };

const char* to_string(TargetVerdict verdict);

// Aggregated outcome of a batch of trials with a Wilson score interval at
// the configured confidence level.
struct SuccessEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double point_estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double confidence = 0.95;
  std::optional<double> target;
  TargetVerdict verdict = TargetVerdict::NoTarget;
};

struct RunOptions {
  unsigned workers = 0;  // 0 = pick from hardware concurrency
  double confidence = 0.95;
  std::optional<double> target;
};

using TrialFn = std::function<TrialRecord(RngStream&)>;

// Runs `trials` independent trials. Trial i draws from RngStream(master_seed,
// i), so the aggregate is a pure function of (experiment, trials, master_seed)
// regardless of how many workers execute the batch or how it is chunked.
SuccessEstimate run_trials(const TrialFn& experiment, std::uint64_t trials,
                           std::uint64_t master_seed,
                           const RunOptions& options = {});

// Wilson score interval, clamped to [0,1]. Never collapses to a point at
// k=0 or k=n.
std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials,
                                          double confidence);

// Inverse standard normal CDF, accurate to ~1e-13 via bisection on erfc.
double normal_quantile(double p);

struct ExceedsHalfResult {
  double z_score = 0.0;
  double critical_value = 0.0;
  bool significant = false;
};

// One-sided z-test of H1: success probability > 1/2, under the null
// variance 1/4. Requires at least 30 trials; the critical value comes from
// the estimate's configured confidence level.
ExceedsHalfResult exceeds_half_test(const SuccessEstimate& estimate);

}  // namespace coinguess
