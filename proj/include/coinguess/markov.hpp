#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace coinguess {

// Random walk on a linear track with stations 1..N: interior stations step
// to either neighbor with probability 1/2, the end stations reflect. The
// chain has period 2, so long-run station frequencies come from the
// stationary equations, not from powering the matrix.
struct ReflectingChain {
  std::size_t station_count;

  explicit ReflectingChain(std::size_t n);
};

// Row-stochastic transition matrix; index i corresponds to station i+1.
std::vector<std::vector<double>> transition_matrix(const ReflectingChain& chain);

// Unique stationary distribution, from an exact linear solve of pi P = pi
// with the normalization row appended. Power iteration would oscillate
// between the two parity classes here; see the period-2 note above.
std::vector<double> stationary_distribution(const ReflectingChain& chain);

// The same distribution in closed form: 1/(2N-2) at the two ends, 1/(N-1)
// at interior stations.
std::vector<double> closed_form_stationary(const ReflectingChain& chain);

// P(origin = d-1 | arrived at d) and P(origin = d+1 | arrived at d) for an
// interior destination d of a chain running at stationarity. Both are 1/2
// for every interior d: the end stations' halved mass exactly offsets their
// doubled exit probability.
std::pair<double, double> origin_posterior(const ReflectingChain& chain,
                                           std::size_t destination);

// Destinations at least `min_end_distance` stations from both ends; the
// observation protocol only wakes the passenger at these. Throws if no
// station qualifies.
std::vector<std::size_t> wake_filter(const ReflectingChain& chain,
                                     std::size_t min_end_distance = 3);

}  // namespace coinguess
