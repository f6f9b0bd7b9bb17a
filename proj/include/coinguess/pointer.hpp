#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coinguess/core.hpp"

namespace coinguess {

enum class PointerKind { Uniform, Exponential, Gaussian };

// Continuous pointer law over the reals. Build through the factories, which
// validate parameters. Every open interval meeting the support carries
// positive mass, so comparisons against a boundary point are almost surely
// strict; exact ties are resampled by the simulators.
struct ContinuousPointer {
  PointerKind kind = PointerKind::Uniform;
  double lo = 0.0;       // Uniform bounds
  double hi = 1.0;
  double rate = 1.0;     // Exponential
  double mean = 0.0;     // Gaussian
  double std_dev = 1.0;

  static ContinuousPointer uniform(double lo, double hi);
  static ContinuousPointer exponential(double rate);
  static ContinuousPointer gaussian(double mean, double std_dev);
};

std::string to_string(const ContinuousPointer& dist);

// The three probabilities a pointer draw splits into around an open
// interval (lo, hi): below + above + between == 1 up to rounding.
struct GapProbabilities {
  double below = 0.0;    // P(pointer < lo)
  double above = 0.0;    // P(pointer > hi)
  double between = 0.0;  // P(lo < pointer < hi)
};

double cdf(const ContinuousPointer& dist, double x);
double sample(const ContinuousPointer& dist, RngStream& rng);
GapProbabilities gap_probabilities(const ContinuousPointer& dist, double lo,
                                   double hi);

// Arc-weight law for a circular track with stations 0..N. Weight k belongs
// to the arc between station k-1 and station k; weight 0 to the arc between
// station N and station 0. Weights are strictly positive and sum to 1.
// Weights built from integer numerators additionally keep an exact rational
// form (numerator[k] / denominator) that the enumeration oracles use for
// error-free sums.
class ArcWeights {
 public:
  static ArcWeights from_probabilities(std::vector<double> weights);
  static ArcWeights from_numerators(std::vector<std::int64_t> numerators);
  static ArcWeights uniform(std::size_t arc_count);

  std::size_t arc_count() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t arc) const;

  bool has_exact() const { return !numerators_.empty(); }
  const std::vector<std::int64_t>& numerators() const { return numerators_; }
  std::int64_t denominator() const { return denominator_; }

  std::size_t sample(RngStream& rng) const;

 private:
  ArcWeights() = default;
  void build_cumulative();

  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<std::int64_t> numerators_;
  std::int64_t denominator_ = 0;
};

std::size_t arc_sample(const ArcWeights& arcs, RngStream& rng);

// Distribution specs used by the CLI and config files:
//   "uniform:a,b"     -> ContinuousPointer::uniform(a, b)
//   "exp:rate"        -> ContinuousPointer::exponential(rate)
//   "normal:mean,sd"  -> ContinuousPointer::gaussian(mean, sd)
ContinuousPointer parse_pointer_spec(const std::string& spec);

// Arc specs: "uniform" or "arcs:w0,w1,...,wN" (one weight per arc, count
// must match). All-integer weights keep the exact rational form; fractional
// weights are normalized to sum 1.
ArcWeights parse_arc_spec(const std::string& spec, std::size_t arc_count);

}  // namespace coinguess
