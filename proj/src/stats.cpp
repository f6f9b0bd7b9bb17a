#include "coinguess/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace coinguess {

const char* to_string(TargetVerdict verdict) {
  switch (verdict) {
    case TargetVerdict::ContainsTarget: return "contains_target";
    case TargetVerdict::MissesTarget: return "misses_target";
    case TargetVerdict::NoTarget: return "no_target";
  }
  return "?";
}

namespace {

double standard_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

unsigned pick_worker_count(unsigned requested, std::uint64_t trials) {
  unsigned workers = requested;
  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, 8u);
  }
  if (static_cast<std::uint64_t>(workers) > trials) {
    workers = static_cast<unsigned>(trials);
  }
  return std::max(workers, 1u);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie strictly in (0,1)");
  }
  double lo = -40.0, hi = 40.0;
  // CDF is strictly monotone; 200 halvings take the bracket far below
  // double resolution.
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (standard_normal_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials,
                                          double confidence) {
  if (trials == 0) {
    throw std::invalid_argument("wilson_interval: trials must be >= 1");
  }
  if (successes > trials) {
    throw std::invalid_argument("wilson_interval: successes exceed trials");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("wilson_interval: confidence must lie in (0,1)");
  }
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  const double z2 = z * z;
  const double n = static_cast<double>(trials);
  const double p_hat = static_cast<double>(successes) / n;
  const double denom = n + z2;
  const double center = (static_cast<double>(successes) + 0.5 * z2) / denom;
  const double radius =
      (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) * n + 0.25 * z2);
  return {std::max(0.0, center - radius), std::min(1.0, center + radius)};
}

SuccessEstimate run_trials(const TrialFn& experiment, std::uint64_t trials,
                           std::uint64_t master_seed,
                           const RunOptions& options) {
  if (!experiment) {
    throw std::invalid_argument("run_trials: experiment must be callable");
  }
  if (trials == 0) {
    throw std::invalid_argument("run_trials: trials must be >= 1");
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw std::invalid_argument("run_trials: confidence must lie in (0,1)");
  }

  const unsigned workers = pick_worker_count(options.workers, trials);
  std::vector<std::uint64_t> counts(workers, 0);
  std::vector<std::exception_ptr> errors(workers);

  // Trial i always runs on stream i, so the partition below only decides
  // which thread does the work, never which numbers it sees.
  auto worker_body = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    try {
      std::uint64_t correct = 0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        RngStream stream(master_seed, i);
        const TrialRecord record = experiment(stream);
        if (record.correct) ++correct;
      }
      counts[w] = correct;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    worker_body(0, 0, trials);
  } else {
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(trials, w * chunk);
      const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
      threads.emplace_back(worker_body, w, lo, hi);
    }
    for (auto& t : threads) t.join();
  }

  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  SuccessEstimate estimate;
  estimate.trials = trials;
  for (std::uint64_t c : counts) estimate.successes += c;
  estimate.point_estimate =
      static_cast<double>(estimate.successes) / static_cast<double>(trials);
  estimate.confidence = options.confidence;
  const auto interval =
      wilson_interval(estimate.successes, trials, options.confidence);
  estimate.ci_low = interval.first;
  estimate.ci_high = interval.second;
  estimate.target = options.target;
  if (options.target) {
    estimate.verdict = (*options.target >= estimate.ci_low &&
                        *options.target <= estimate.ci_high)
                           ? TargetVerdict::ContainsTarget
                           : TargetVerdict::MissesTarget;
  }
  return estimate;
}

ExceedsHalfResult exceeds_half_test(const SuccessEstimate& estimate) {
  if (estimate.trials < 30) {
    throw std::invalid_argument(
        "exceeds_half_test: needs at least 30 trials for the normal approximation");
  }
  ExceedsHalfResult result;
  const double n = static_cast<double>(estimate.trials);
  result.z_score = (estimate.point_estimate - 0.5) / std::sqrt(0.25 / n);
  result.critical_value = normal_quantile(estimate.confidence);
  result.significant = result.z_score > result.critical_value;
  return result;
}

}  // namespace coinguess
