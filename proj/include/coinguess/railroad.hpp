#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coinguess/core.hpp"
#include "coinguess/pointer.hpp"

namespace coinguess {

// Single-hop trip on a linear track with stations at the integers,
// numbered increasing west to east. The train travels exactly one station;
// a fair coin (heads = East) decides, or equivalently the origin is one of
// the destination's two neighbors.
struct LinearScenario {
  int destination = 0;  // used by postdiction and destination-first modes
  int origin = 0;       // used by the origin-first mode
  ContinuousPointer pointer;
  TrialMode mode = TrialMode::Postdiction;
  // P(origin = destination - 1). 1/2 is the equiprobability hypothesis the
  // closed forms assume; other values are for sensitivity runs.
  double west_origin_probability = 0.5;

  static LinearScenario postdiction(int destination, ContinuousPointer pointer);
  static LinearScenario prediction_destination_first(int destination,
                                                     ContinuousPointer pointer);
  static LinearScenario prediction_origin_first(int origin,
                                                ContinuousPointer pointer);
};

// Success probability of the pointer strategy when only the destination d
// is known: guess East iff the pointer lands east of the origin. Equals
// (1 + P(d-1 < pointer < d+1)) / 2 under equiprobable origins.
double analytic_linear_success(const ContinuousPointer& dist, int destination);

// Same strategy with P(origin = d-1) = west_origin_probability instead of
// 1/2: west * (1 - P(x < d-1)) + (1 - west) * P(x < d+1).
double postdiction_success_with_bias(const ContinuousPointer& dist,
                                     int destination,
                                     double west_origin_probability);

// The trip already happened; the passenger knows the destination, draws a
// pointer, and guesses which way the train came. Pointer ties with the
// origin coordinate are redrawn.
TrialRecord simulate_postdiction(const LinearScenario& scenario,
                                 RngStream& rng);

// Control: the passenger knows only the current station, the destination
// stays hidden. The pointer strategy degrades to coin-guessing.
TrialRecord simulate_known_station(int origin, const ContinuousPointer& dist,
                                   const Coin& coin, RngStream& rng);

// The trip has not happened yet; the guess is committed before the coin is
// flipped. Destination-first mode pins the destination and samples the
// origin; origin-first pins the origin and lets the coin pick the
// destination. Only the first keeps the pointer edge.
TrialRecord simulate_prediction(const LinearScenario& scenario,
                                RngStream& rng);

// Exact success probability of origin-first prediction, by enumerating the
// two coin outcomes against the pointer's side split. Always exactly 1/2:
// the guess is independent of a coin that has not been flipped.
double enumerate_origin_first(const ContinuousPointer& dist, int origin);

// Track whose stations are known to the passenger only as an alphabetical
// list of names; the west-to-east layout stays hidden inside. The public
// surface never reveals a positional index, so protocols built on it cannot
// leak geometry: queries answer only "is this name east or west of that
// one".
class NamedTrack {
 public:
  static NamedTrack from_west_to_east(std::vector<std::string> west_to_east);

  std::size_t station_count() const { return west_to_east_.size(); }
  const std::vector<std::string>& alphabetical() const { return alphabetical_; }
  bool has_station(const std::string& name) const;

 private:
  NamedTrack() = default;
  std::size_t position_of(const std::string& name) const;

  std::vector<std::string> west_to_east_;
  std::vector<std::string> alphabetical_;

  friend Direction direction_oracle(const NamedTrack& track,
                                    const std::string& current,
                                    const std::string& probe);
  friend TrialRecord simulate_named_postdiction(const NamedTrack& track,
                                                RngStream& rng);
  friend double enumerate_named_postdiction(const NamedTrack& track);
};

// Which side of `current` the station `probe` lies on. Rejects unknown
// names and probe == current.
Direction direction_oracle(const NamedTrack& track, const std::string& current,
                           const std::string& probe);

// Masked postdiction round: destination uniform over interior stations,
// origin one of its neighbors by fair coin, probe name uniform over the
// list minus the current station; guess the side the probe falls on.
// Requires at least 3 stations.
TrialRecord simulate_named_postdiction(const NamedTrack& track,
                                       RngStream& rng);

// Exact success probability of the masked round above, by enumerating
// (destination, origin side, probe). Discrete analog of the linear closed
// form; works out to 1/2 + 1/(station_count - 1) for every track size.
double enumerate_named_postdiction(const NamedTrack& track);

// Runs `trials` rounds in which two passengers at the same station evaluate
// the same pointer draw independently; returns true iff their guesses agree
// on every round. Identical inputs force identical predictions.
bool shared_pointer_equivalence(std::uint64_t trials,
                                const LinearScenario& scenario,
                                RngStream& rng);

// Same setup with independent pointer draws per passenger; returns how many
// rounds the two guesses differed.
std::uint64_t independent_pointer_mismatches(std::uint64_t trials,
                                             const LinearScenario& scenario,
                                             RngStream& rng);

}  // namespace coinguess
