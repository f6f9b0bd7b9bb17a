#include "coinguess/circular.hpp"

#include <stdexcept>

namespace coinguess {

namespace {

constexpr std::size_t kMaxEnumerationStations = 64;

void require_station(std::size_t station, std::size_t station_count,
                     const char* who) {
  if (station >= station_count) {
    throw std::invalid_argument(std::string(who) +
                                ": station index out of range");
  }
}

// Is `arc` among the arcs swept clockwise from `from` to `to`?
bool in_clockwise_span(std::size_t from, std::size_t to, std::size_t arc,
                       std::size_t station_count) {
  const std::size_t length = (to + station_count - from) % station_count;
  const std::size_t offset = (arc + station_count - from) % station_count;
  return offset >= 1 && offset <= length;
}

}  // namespace

CircularTrack::CircularTrack(std::size_t station_count_in, ArcWeights arcs_in,
                             std::vector<std::string> names_in)
    : station_count(station_count_in),
      arcs(std::move(arcs_in)),
      names(std::move(names_in)) {
  if (station_count < 5) {
    throw std::invalid_argument(
        "CircularTrack: at least 5 stations required so an admissible "
        "reference station exists for every destination");
  }
  if (arcs.arc_count() != station_count) {
    throw std::invalid_argument(
        "CircularTrack: need exactly one arc weight per station");
  }
  if (!names.empty() && names.size() != station_count) {
    throw std::invalid_argument(
        "CircularTrack: names must be empty or one per station");
  }
}

RsPolicy RsPolicy::opposite_passenger() {
  return RsPolicy(Kind::OppositePassenger);
}

RsPolicy RsPolicy::fixed_station(std::size_t station) {
  return RsPolicy(Kind::FixedStation, station);
}

std::size_t RsPolicy::fixed_station_index() const {
  if (kind_ != Kind::FixedStation) {
    throw std::logic_error("RsPolicy: not a fixed-station policy");
  }
  return fixed_;
}

std::size_t RsPolicy::reference_for(std::size_t origin,
                                    std::size_t station_count) const {
  require_station(origin, station_count, "RsPolicy::reference_for");
  if (kind_ == Kind::OppositePassenger) {
    return choose_reference_station(origin, station_count);
  }
  require_station(fixed_, station_count, "RsPolicy::reference_for");
  if (fixed_ == origin) {
    return choose_reference_station(origin, station_count);
  }
  return fixed_;
}

std::string RsPolicy::label() const {
  if (kind_ == Kind::OppositePassenger) return "opposite";
  return "fixed:" + std::to_string(fixed_);
}

std::size_t choose_reference_station(std::size_t origin,
                                     std::size_t station_count) {
  if (station_count < 5) {
    throw std::invalid_argument(
        "choose_reference_station: at least 5 stations required");
  }
  require_station(origin, station_count, "choose_reference_station");
  return (origin + station_count / 2) % station_count;
}

std::vector<std::size_t> clockwise_arc_set(std::size_t from, std::size_t to,
                                           std::size_t station_count) {
  if (station_count < 2) {
    throw std::invalid_argument("clockwise_arc_set: at least 2 stations");
  }
  require_station(from, station_count, "clockwise_arc_set");
  require_station(to, station_count, "clockwise_arc_set");
  if (from == to) {
    throw std::invalid_argument(
        "clockwise_arc_set: endpoints must be distinct");
  }
  const std::size_t length = (to + station_count - from) % station_count;
  std::vector<std::size_t> arcs;
  arcs.reserve(length);
  for (std::size_t i = 1; i <= length; ++i) {
    arcs.push_back((from + i) % station_count);
  }
  return arcs;
}

Direction guess_direction(std::size_t origin, std::size_t rs,
                          std::size_t pointer_arc,
                          std::size_t station_count) {
  require_station(origin, station_count, "guess_direction");
  require_station(rs, station_count, "guess_direction");
  require_station(pointer_arc, station_count, "guess_direction");
  if (origin == rs) {
    throw std::invalid_argument(
        "guess_direction: reference station must differ from the origin");
  }
  return in_clockwise_span(origin, rs, pointer_arc, station_count)
             ? Direction::CW
             : Direction::CCW;
}

double closed_form_conditional_success(const CircularTrack& track,
                                       std::size_t destination,
                                       std::size_t rs) {
  const std::size_t n = track.station_count;
  require_station(destination, n, "closed_form_conditional_success");
  require_station(rs, n, "closed_form_conditional_success");
  const std::size_t before = (destination + n - 1) % n;
  const std::size_t after = (destination + 1) % n;
  if (rs == before || rs == destination || rs == after) {
    throw std::invalid_argument(
        "closed_form_conditional_success: the reference station must lie "
        "outside the destination's minor arc");
  }
  return 0.5 * (1.0 + track.arcs.weight(destination) +
                track.arcs.weight(after));
}

double closed_form_average_success(const CircularTrack& track) {
  return 0.5 + 1.0 / static_cast<double>(track.station_count);
}

TrialRecord simulate_forward(const CircularTrack& track,
                             const RsPolicy& policy, RngStream& rng) {
  const std::size_t n = track.station_count;
  const std::size_t origin = rng.below(n);
  const std::size_t rs = policy.reference_for(origin, n);
  const std::size_t arc = arc_sample(track.arcs, rng);
  const Direction guess = guess_direction(origin, rs, arc, n);
  const CoinFace outcome = flip(Coin::fair(), rng);
  // Destination is the next station the coin's way; it never enters the
  // guess, so it is not materialized here.
  return make_trial_record("circular", outcome, guess, TrialMode::Postdiction,
                           Geometry::Circular, rng.stream_id());
}

TrialRecord simulate_conditional(const CircularTrack& track,
                                 std::size_t destination,
                                 const RsPolicy& policy, RngStream& rng) {
  const std::size_t n = track.station_count;
  require_station(destination, n, "simulate_conditional");
  // Given the destination, the two neighbor origins are equally likely
  // (uniform origins crossed with a fair coin).
  const CoinFace outcome = flip(Coin::fair(), rng);
  const bool came_clockwise = outcome == CoinFace::Heads;
  const std::size_t origin =
      came_clockwise ? (destination + n - 1) % n : (destination + 1) % n;
  const std::size_t rs = policy.reference_for(origin, n);
  const std::size_t arc = arc_sample(track.arcs, rng);
  const Direction guess = guess_direction(origin, rs, arc, n);
  return make_trial_record("circular-conditional", outcome, guess,
                           TrialMode::Postdiction, Geometry::Circular,
                           rng.stream_id());
}

double enumerate_exact(const CircularTrack& track, const RsPolicy& policy) {
  const std::size_t n = track.station_count;
  if (n > kMaxEnumerationStations) {
    throw std::invalid_argument(
        "enumerate_exact: enumeration capped at 64 stations");
  }
  if (track.arcs.has_exact()) {
    // All weights share the denominator D; tally favorable numerators over
    // (origin, coin, arc) and divide once at the end. Error-free.
    std::int64_t favorable = 0;
    for (std::size_t origin = 0; origin < n; ++origin) {
      const std::size_t rs = policy.reference_for(origin, n);
      for (const CoinFace face : {CoinFace::Heads, CoinFace::Tails}) {
        const Direction actual = direction_of(face, Geometry::Circular);
        for (std::size_t arc = 0; arc < n; ++arc) {
          if (guess_direction(origin, rs, arc, n) == actual) {
            favorable += track.arcs.numerators()[arc];
          }
        }
      }
    }
    const double denom = 2.0 * static_cast<double>(n) *
                         static_cast<double>(track.arcs.denominator());
    return static_cast<double>(favorable) / denom;
  }
  double total = 0.0;
  const double origin_weight = 1.0 / static_cast<double>(n);
  for (std::size_t origin = 0; origin < n; ++origin) {
    const std::size_t rs = policy.reference_for(origin, n);
    for (const CoinFace face : {CoinFace::Heads, CoinFace::Tails}) {
      const Direction actual = direction_of(face, Geometry::Circular);
      for (std::size_t arc = 0; arc < n; ++arc) {
        if (guess_direction(origin, rs, arc, n) == actual) {
          total += origin_weight * 0.5 * track.arcs.weight(arc);
        }
      }
    }
  }
  return total;
}

double conditional_success_given_destination(const CircularTrack& track,
                                             std::size_t destination,
                                             const RsPolicy& policy) {
  const std::size_t n = track.station_count;
  require_station(destination, n, "conditional_success_given_destination");
  const std::size_t origin_cw = (destination + n - 1) % n;   // arrived CW
  const std::size_t origin_ccw = (destination + 1) % n;      // arrived CCW
  const std::size_t rs_cw = policy.reference_for(origin_cw, n);
  const std::size_t rs_ccw = policy.reference_for(origin_ccw, n);
  if (track.arcs.has_exact()) {
    std::int64_t favorable = 0;
    for (std::size_t arc = 0; arc < n; ++arc) {
      if (guess_direction(origin_cw, rs_cw, arc, n) == Direction::CW) {
        favorable += track.arcs.numerators()[arc];
      }
      if (guess_direction(origin_ccw, rs_ccw, arc, n) == Direction::CCW) {
        favorable += track.arcs.numerators()[arc];
      }
    }
    return static_cast<double>(favorable) /
           (2.0 * static_cast<double>(track.arcs.denominator()));
  }
  double favorable = 0.0;
  for (std::size_t arc = 0; arc < n; ++arc) {
    if (guess_direction(origin_cw, rs_cw, arc, n) == Direction::CW) {
      favorable += track.arcs.weight(arc);
    }
    if (guess_direction(origin_ccw, rs_ccw, arc, n) == Direction::CCW) {
      favorable += track.arcs.weight(arc);
    }
  }
  return 0.5 * favorable;
}

}  // namespace coinguess
