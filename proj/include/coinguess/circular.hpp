#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coinguess/core.hpp"
#include "coinguess/pointer.hpp"

namespace coinguess {

// Circular track with stations 0..N placed clockwise, so station_count is
// N+1 and there are N+1 arcs (arc k between stations k-1 and k). At least 5
// stations, so a reference station outside the minor arc around any
// destination exists.
struct CircularTrack {
  std::size_t station_count;
  ArcWeights arcs;
  std::vector<std::string> names;  // optional labels for masked protocols

  CircularTrack(std::size_t station_count, ArcWeights arcs,
                std::vector<std::string> names = {});
};

// How a trial picks the reference station (RS) the guessing rule needs.
// OppositePassenger re-derives it from the passenger's own station every
// trial; FixedStation pins one station for all trials, which is what the
// per-destination closed form below tacitly assumes.
class RsPolicy {
 public:
  enum class Kind { OppositePassenger, FixedStation };

  static RsPolicy opposite_passenger();
  static RsPolicy fixed_station(std::size_t station);

  Kind kind() const { return kind_; }
  std::size_t fixed_station_index() const;

  // Reference station for a trial starting at `origin`. A fixed RS equal to
  // the passenger's own station cannot split the circle into two arcs; that
  // degenerate case falls back to the diametric station.
  std::size_t reference_for(std::size_t origin,
                            std::size_t station_count) const;

  std::string label() const;

 private:
  explicit RsPolicy(Kind kind, std::size_t station = 0)
      : kind_(kind), fixed_(station) {}

  Kind kind_;
  std::size_t fixed_;
};

// Station roughly diametrically opposite the origin: origin + floor(n/2)
// mod n. Requires at least 5 stations.
std::size_t choose_reference_station(std::size_t origin,
                                     std::size_t station_count);

// Arc indices swept when travelling clockwise from station `from` to
// station `to`: from+1, from+2, ..., to (mod station_count). The clockwise
// and counterclockwise sets partition all arcs.
std::vector<std::size_t> clockwise_arc_set(std::size_t from, std::size_t to,
                                           std::size_t station_count);

// Guess CW iff the pointer arc lies in the clockwise set from the origin to
// the reference station. Rejects rs == origin.
Direction guess_direction(std::size_t origin, std::size_t rs,
                          std::size_t pointer_arc, std::size_t station_count);

// Closed-form P(correct | destination = k) for a reference station rs
// outside the stations {k-1, k, k+1}: (1 + w_k + w_{k+1}) / 2, independent
// of which admissible rs is used. Rejects rs inside the excluded region.
double closed_form_conditional_success(const CircularTrack& track,
                                       std::size_t destination,
                                       std::size_t rs);

// Closed-form average of the conditional success over destinations with an
// admissible fixed RS assumed for each: 1/2 + 1/station_count, independent
// of the arc weights. The forward-model oracles below measure what happens
// without that assumption; verification reports show both.
double closed_form_average_success(const CircularTrack& track);

// Forward model: origin uniform, fair coin picks CW/CCW, destination is the
// next station that way, pointer arc drawn from the weights, guess from the
// rs policy. Pointers live as arc indices; angular positions never occur.
TrialRecord simulate_forward(const CircularTrack& track,
                             const RsPolicy& policy, RngStream& rng);

// Conditional model: destination pinned, origin one of its two neighbors by
// fair coin (the forward-model posterior), guess as above.
TrialRecord simulate_conditional(const CircularTrack& track,
                                 std::size_t destination,
                                 const RsPolicy& policy, RngStream& rng);

// Exact forward-model success probability by enumerating (origin, coin,
// arc). Exact rational arithmetic when the weights carry it; plain doubles
// otherwise. The guess is a function of origin and pointer only, both
// independent of the fair coin, so this is exactly 1/2 for every track and
// policy; kept as an executable check rather than a constant for that
// reason. Tracks with more than 64 stations are rejected.
double enumerate_exact(const CircularTrack& track, const RsPolicy& policy);

// Exact P(correct | destination) under the forward model, enumerating the
// two origins against the arc law. Matches the closed form above whenever
// the policy yields an admissible rs for both origins.
double conditional_success_given_destination(const CircularTrack& track,
                                             std::size_t destination,
                                             const RsPolicy& policy);

}  // namespace coinguess
