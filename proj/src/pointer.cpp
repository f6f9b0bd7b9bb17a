#include "coinguess/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace coinguess {

namespace {

bool finite(double x) { return std::isfinite(x); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_number(const std::string& token, const std::string& context) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": '" + token + "' is not a number");
  }
  if (used != token.size() || !finite(value)) {
    throw std::invalid_argument(context + ": '" + token + "' is not a number");
  }
  return value;
}

bool is_positive_integer(const std::string& token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

ContinuousPointer ContinuousPointer::uniform(double lo, double hi) {
  if (!finite(lo) || !finite(hi) || !(lo < hi)) {
    throw std::invalid_argument("uniform pointer: lo < hi required");
  }
  ContinuousPointer d;
  d.kind = PointerKind::Uniform;
  d.lo = lo;
  d.hi = hi;
  return d;
}

ContinuousPointer ContinuousPointer::exponential(double rate) {
  if (!finite(rate) || !(rate > 0.0)) {
    throw std::invalid_argument("exponential pointer: rate > 0 required");
  }
  ContinuousPointer d;
  d.kind = PointerKind::Exponential;
  d.rate = rate;
  return d;
}

ContinuousPointer ContinuousPointer::gaussian(double mean, double std_dev) {
  if (!finite(mean) || !finite(std_dev) || !(std_dev > 0.0)) {
    throw std::invalid_argument("gaussian pointer: std_dev > 0 required");
  }
  ContinuousPointer d;
  d.kind = PointerKind::Gaussian;
  d.mean = mean;
  d.std_dev = std_dev;
  return d;
}

std::string to_string(const ContinuousPointer& dist) {
  std::ostringstream out;
  switch (dist.kind) {
    case PointerKind::Uniform:
      out << "uniform:" << dist.lo << "," << dist.hi;
      break;
    case PointerKind::Exponential:
      out << "exp:" << dist.rate;
      break;
    case PointerKind::Gaussian:
      out << "normal:" << dist.mean << "," << dist.std_dev;
      break;
  }
  return out.str();
}

double cdf(const ContinuousPointer& dist, double x) {
  switch (dist.kind) {
    case PointerKind::Uniform:
      if (x <= dist.lo) return 0.0;
      if (x >= dist.hi) return 1.0;
      return (x - dist.lo) / (dist.hi - dist.lo);
    case PointerKind::Exponential:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-dist.rate * x);
    case PointerKind::Gaussian:
      // erfc keeps the tails accurate where 1 - erf would cancel.
      return 0.5 * std::erfc(-(x - dist.mean) /
                             (dist.std_dev * std::numbers::sqrt2));
  }
  throw std::logic_error("cdf: unknown pointer kind");
}

double sample(const ContinuousPointer& dist, RngStream& rng) {
  switch (dist.kind) {
    case PointerKind::Uniform:
      return dist.lo + rng.next_double() * (dist.hi - dist.lo);
    case PointerKind::Exponential:
      // Inverse CDF; 1-u lies in (0,1] so the log never sees zero.
      return -std::log1p(-rng.next_double()) / dist.rate;
    case PointerKind::Gaussian: {
      // Box-Muller, no spare caching: every draw consumes exactly two
      // uniforms, which keeps stream alignment easy to reason about.
      const double u1 = 1.0 - rng.next_double();
      const double u2 = rng.next_double();
      return dist.mean + dist.std_dev * std::sqrt(-2.0 * std::log(u1)) *
                             std::cos(2.0 * std::numbers::pi * u2);
    }
  }
  throw std::logic_error("sample: unknown pointer kind");
}

GapProbabilities gap_probabilities(const ContinuousPointer& dist, double lo,
                                   double hi) {
  if (!finite(lo) || !finite(hi) || !(lo < hi)) {
    throw std::invalid_argument("gap_probabilities: lo < hi required");
  }
  GapProbabilities g;
  const double cdf_lo = cdf(dist, lo);
  const double cdf_hi = cdf(dist, hi);
  g.below = cdf_lo;
  g.above = 1.0 - cdf_hi;
  // Monotone in exact arithmetic; clamp the one-ulp wobble.
  g.between = std::max(0.0, cdf_hi - cdf_lo);
  return g;
}

ArcWeights ArcWeights::from_probabilities(std::vector<double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("ArcWeights: at least one arc required");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!finite(w) || !(w > 0.0)) {
      throw std::invalid_argument("ArcWeights: weights must be strictly positive");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("ArcWeights: weights must sum to 1");
  }
  ArcWeights arcs;
  arcs.weights_ = std::move(weights);
  arcs.build_cumulative();
  return arcs;
}

ArcWeights ArcWeights::from_numerators(std::vector<std::int64_t> numerators) {
  if (numerators.empty()) {
    throw std::invalid_argument("ArcWeights: at least one arc required");
  }
  std::int64_t sum = 0;
  for (std::int64_t n : numerators) {
    if (n <= 0) {
      throw std::invalid_argument("ArcWeights: numerators must be positive");
    }
    if (sum > std::numeric_limits<std::int64_t>::max() - n) {
      throw std::invalid_argument("ArcWeights: numerator sum overflows");
    }
    sum += n;
  }
  ArcWeights arcs;
  arcs.numerators_ = std::move(numerators);
  arcs.denominator_ = sum;
  arcs.weights_.reserve(arcs.numerators_.size());
  for (std::int64_t n : arcs.numerators_) {
    arcs.weights_.push_back(static_cast<double>(n) / static_cast<double>(sum));
  }
  arcs.build_cumulative();
  return arcs;
}

ArcWeights ArcWeights::uniform(std::size_t arc_count) {
  if (arc_count == 0) {
    throw std::invalid_argument("ArcWeights: at least one arc required");
  }
  return from_numerators(std::vector<std::int64_t>(arc_count, 1));
}

double ArcWeights::weight(std::size_t arc) const {
  if (arc >= weights_.size()) {
    throw std::out_of_range("ArcWeights: arc index out of range");
  }
  return weights_[arc];
}

void ArcWeights::build_cumulative() {
  cumulative_.clear();
  cumulative_.reserve(weights_.size());
  double acc = 0.0;
  for (double w : weights_) {
    acc += w;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;  // guard against rounding shortfall
}

std::size_t ArcWeights::sample(RngStream& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::size_t arc_sample(const ArcWeights& arcs, RngStream& rng) {
  return arcs.sample(rng);
}

ContinuousPointer parse_pointer_spec(const std::string& spec) {
  const auto head = spec.find(':');
  if (head == std::string::npos) {
    throw std::invalid_argument(
        "pointer spec '" + spec +
        "': expected uniform:a,b | exp:rate | normal:mean,sd");
  }
  const std::string kind = spec.substr(0, head);
  const auto args = split(spec.substr(head + 1), ',');
  if (kind == "uniform") {
    if (args.size() != 2) {
      throw std::invalid_argument("pointer spec 'uniform' takes two arguments: uniform:a,b");
    }
    return ContinuousPointer::uniform(parse_number(args[0], "uniform lo"),
                                      parse_number(args[1], "uniform hi"));
  }
  if (kind == "exp") {
    if (args.size() != 1) {
      throw std::invalid_argument("pointer spec 'exp' takes one argument: exp:rate");
    }
    return ContinuousPointer::exponential(parse_number(args[0], "exp rate"));
  }
  if (kind == "normal") {
    if (args.size() != 2) {
      throw std::invalid_argument("pointer spec 'normal' takes two arguments: normal:mean,sd");
    }
    return ContinuousPointer::gaussian(parse_number(args[0], "normal mean"),
                                       parse_number(args[1], "normal sd"));
  }
  throw std::invalid_argument("pointer spec: unknown kind '" + kind + "'");
}

ArcWeights parse_arc_spec(const std::string& spec, std::size_t arc_count) {
  if (spec == "uniform") {
    return ArcWeights::uniform(arc_count);
  }
  const std::string prefix = "arcs:";
  if (spec.rfind(prefix, 0) != 0) {
    throw std::invalid_argument("arc spec '" + spec +
                                "': expected 'uniform' or 'arcs:w0,w1,...'");
  }
  const auto tokens = split(spec.substr(prefix.size()), ',');
  if (tokens.size() != arc_count) {
    throw std::invalid_argument(
        "arc spec: expected " + std::to_string(arc_count) + " weights, got " +
        std::to_string(tokens.size()));
  }
  const bool all_integer =
      std::all_of(tokens.begin(), tokens.end(), is_positive_integer);
  if (all_integer) {
    std::vector<std::int64_t> numerators;
    numerators.reserve(tokens.size());
    for (const auto& t : tokens) {
      try {
        numerators.push_back(static_cast<std::int64_t>(std::stoll(t)));
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("arc spec: weight '" + t +
                                    "' does not fit a 64-bit integer");
      }
    }
    return ArcWeights::from_numerators(std::move(numerators));
  }
  std::vector<double> weights;
  weights.reserve(tokens.size());
  double sum = 0.0;
  for (const auto& t : tokens) {
    const double w = parse_number(t, "arc weight");
    if (!(w > 0.0)) {
      throw std::invalid_argument("arc spec: weights must be strictly positive");
    }
    weights.push_back(w);
    sum += w;
  }
  for (double& w : weights) w /= sum;
  return ArcWeights::from_probabilities(std::move(weights));
}

}  // namespace coinguess
