#include "coinguess/railroad.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coinguess {

namespace {

double draw_pointer_avoiding(const ContinuousPointer& dist, double boundary,
                             RngStream& rng) {
  double x = sample(dist, rng);
  while (x == boundary) x = sample(dist, rng);
  return x;
}

void require_mode(const LinearScenario& scenario, bool prediction,
                  const char* who) {
  const bool is_prediction = scenario.mode != TrialMode::Postdiction;
  if (is_prediction != prediction) {
    throw std::invalid_argument(std::string(who) +
                                ": scenario mode does not match");
  }
}

void require_bias(double west) {
  if (!(west > 0.0 && west < 1.0)) {
    throw std::invalid_argument(
        "west_origin_probability must lie strictly in (0,1)");
  }
}

}  // namespace

LinearScenario LinearScenario::postdiction(int destination,
                                           ContinuousPointer pointer) {
  LinearScenario s;
  s.destination = destination;
  s.pointer = pointer;
  s.mode = TrialMode::Postdiction;
  return s;
}

LinearScenario LinearScenario::prediction_destination_first(
    int destination, ContinuousPointer pointer) {
  LinearScenario s;
  s.destination = destination;
  s.pointer = pointer;
  s.mode = TrialMode::PredictionDestinationFirst;
  return s;
}

LinearScenario LinearScenario::prediction_origin_first(
    int origin, ContinuousPointer pointer) {
  LinearScenario s;
  s.origin = origin;
  s.pointer = pointer;
  s.mode = TrialMode::PredictionOriginFirst;
  return s;
}

double analytic_linear_success(const ContinuousPointer& dist,
                               int destination) {
  const GapProbabilities gap = gap_probabilities(
      dist, static_cast<double>(destination - 1),
      static_cast<double>(destination + 1));
  return 0.5 * (1.0 + gap.between);
}

double postdiction_success_with_bias(const ContinuousPointer& dist,
                                     int destination,
                                     double west_origin_probability) {
  require_bias(west_origin_probability);
  const double from_west =
      1.0 - cdf(dist, static_cast<double>(destination - 1));
  const double from_east = cdf(dist, static_cast<double>(destination + 1));
  return west_origin_probability * from_west +
         (1.0 - west_origin_probability) * from_east;
}

TrialRecord simulate_postdiction(const LinearScenario& scenario,
                                 RngStream& rng) {
  require_mode(scenario, false, "simulate_postdiction");
  require_bias(scenario.west_origin_probability);
  // Origin west of the destination means the trip went east (heads).
  const bool from_west = rng.bernoulli(scenario.west_origin_probability);
  const int origin = from_west ? scenario.destination - 1
                               : scenario.destination + 1;
  const CoinFace outcome = from_west ? CoinFace::Heads : CoinFace::Tails;
  const double x = draw_pointer_avoiding(scenario.pointer,
                                         static_cast<double>(origin), rng);
  const Direction guess =
      x > static_cast<double>(origin) ? Direction::East : Direction::West;
  return make_trial_record("rail-postdiction", outcome, guess,
                           TrialMode::Postdiction, Geometry::Linear,
                           rng.stream_id());
}

TrialRecord simulate_known_station(int origin, const ContinuousPointer& dist,
                                   const Coin& coin, RngStream& rng) {
  const CoinFace outcome = flip(coin, rng);
  const double x =
      draw_pointer_avoiding(dist, static_cast<double>(origin), rng);
  const Direction guess =
      x > static_cast<double>(origin) ? Direction::East : Direction::West;
  return make_trial_record("rail-control", outcome, guess,
                           TrialMode::Postdiction, Geometry::Linear,
                           rng.stream_id());
}

TrialRecord simulate_prediction(const LinearScenario& scenario,
                                RngStream& rng) {
  require_mode(scenario, true, "simulate_prediction");
  if (scenario.mode == TrialMode::PredictionDestinationFirst) {
    require_bias(scenario.west_origin_probability);
    // Pointer committed before the origin is looked at; same law as
    // postdiction, different sequencing.
    double x = sample(scenario.pointer, rng);
    const bool from_west = rng.bernoulli(scenario.west_origin_probability);
    const int origin = from_west ? scenario.destination - 1
                                 : scenario.destination + 1;
    while (x == static_cast<double>(origin)) x = sample(scenario.pointer, rng);
    const CoinFace outcome = from_west ? CoinFace::Heads : CoinFace::Tails;
    const Direction guess =
        x > static_cast<double>(origin) ? Direction::East : Direction::West;
    return make_trial_record("rail-predict-dest-first", outcome, guess,
                             TrialMode::PredictionDestinationFirst,
                             Geometry::Linear, rng.stream_id());
  }
  // Origin-first: the guess exists before the coin is flipped, so it cannot
  // beat 1/2 whatever the pointer law.
  const double x = draw_pointer_avoiding(
      scenario.pointer, static_cast<double>(scenario.origin), rng);
  const Direction guess = x > static_cast<double>(scenario.origin)
                              ? Direction::East
                              : Direction::West;
  const CoinFace outcome = flip(Coin::fair(), rng);
  return make_trial_record("rail-predict-origin-first", outcome, guess,
                           TrialMode::PredictionOriginFirst, Geometry::Linear,
                           rng.stream_id());
}

double enumerate_origin_first(const ContinuousPointer& dist, int origin) {
  // P(guess East) from the pointer split, then both coin outcomes at 1/2.
  // The bracketed sum is exactly 1.0 in IEEE arithmetic, so the result is
  // exactly 0.5 for every distribution.
  const double guess_east = 1.0 - cdf(dist, static_cast<double>(origin));
  return 0.5 * (guess_east + (1.0 - guess_east));
}

NamedTrack NamedTrack::from_west_to_east(
    std::vector<std::string> west_to_east) {
  if (west_to_east.size() < 2) {
    throw std::invalid_argument("NamedTrack: at least 2 stations required");
  }
  std::set<std::string> seen;
  for (const auto& name : west_to_east) {
    if (name.empty()) {
      throw std::invalid_argument("NamedTrack: station names must be non-empty");
    }
    if (!seen.insert(name).second) {
      throw std::invalid_argument("NamedTrack: duplicate station name '" +
                                  name + "'");
    }
  }
  NamedTrack track;
  track.west_to_east_ = std::move(west_to_east);
  track.alphabetical_ = track.west_to_east_;
  std::sort(track.alphabetical_.begin(), track.alphabetical_.end());
  return track;
}

bool NamedTrack::has_station(const std::string& name) const {
  return std::find(west_to_east_.begin(), west_to_east_.end(), name) !=
         west_to_east_.end();
}

std::size_t NamedTrack::position_of(const std::string& name) const {
  const auto it =
      std::find(west_to_east_.begin(), west_to_east_.end(), name);
  if (it == west_to_east_.end()) {
    throw std::invalid_argument("NamedTrack: unknown station '" + name + "'");
  }
  return static_cast<std::size_t>(it - west_to_east_.begin());
}

Direction direction_oracle(const NamedTrack& track, const std::string& current,
                           const std::string& probe) {
  const std::size_t cur = track.position_of(current);
  const std::size_t pro = track.position_of(probe);
  if (cur == pro) {
    throw std::invalid_argument(
        "direction_oracle: probe must differ from the current station");
  }
  return pro > cur ? Direction::East : Direction::West;
}

TrialRecord simulate_named_postdiction(const NamedTrack& track,
                                       RngStream& rng) {
  const std::size_t count = track.station_count();
  if (count < 3) {
    throw std::invalid_argument(
        "simulate_named_postdiction: needs an interior station (>= 3 total)");
  }
  const std::size_t destination = 1 + rng.below(count - 2);
  const bool from_west = rng.bernoulli(0.5);
  const std::size_t origin = from_west ? destination - 1 : destination + 1;
  // Uniform over stations minus the current one. Drawing by position keeps
  // the law identical to a uniform draw over names, and makes the outcome
  // sequence invariant under renaming.
  std::size_t probe = rng.below(count - 1);
  if (probe >= origin) ++probe;
  const CoinFace outcome = from_west ? CoinFace::Heads : CoinFace::Tails;
  // The guess goes through the name-only oracle; positions never reach it.
  const Direction guess = direction_oracle(track, track.west_to_east_[origin],
                                           track.west_to_east_[probe]);
  return make_trial_record("rail-named", outcome, guess,
                           TrialMode::Postdiction, Geometry::Linear,
                           rng.stream_id());
}

double enumerate_named_postdiction(const NamedTrack& track) {
  const std::size_t count = track.station_count();
  if (count < 3) {
    throw std::invalid_argument(
        "enumerate_named_postdiction: needs an interior station (>= 3 total)");
  }
  double total = 0.0;
  const double destination_weight = 1.0 / static_cast<double>(count - 2);
  const double probe_weight = 1.0 / static_cast<double>(count - 1);
  for (std::size_t destination = 1; destination + 1 < count; ++destination) {
    for (int side = 0; side < 2; ++side) {
      const bool from_west = side == 0;
      const std::size_t origin = from_west ? destination - 1 : destination + 1;
      for (std::size_t probe = 0; probe < count; ++probe) {
        if (probe == origin) continue;
        const bool guess_east = probe > origin;
        const bool correct = guess_east == from_west;
        if (correct) {
          total += destination_weight * 0.5 * probe_weight;
        }
      }
    }
  }
  return total;
}

namespace {

// Current station the passengers share in a given scenario, drawn per trial.
int draw_current_station(const LinearScenario& scenario, RngStream& rng) {
  if (scenario.mode == TrialMode::PredictionOriginFirst) {
    return scenario.origin;
  }
  const bool from_west = rng.bernoulli(scenario.west_origin_probability);
  return from_west ? scenario.destination - 1 : scenario.destination + 1;
}

// One passenger's rule, evaluated in isolation.
Direction passenger_guess(double pointer_value, int current) {
  return pointer_value > static_cast<double>(current) ? Direction::East
                                                      : Direction::West;
}

}  // namespace

bool shared_pointer_equivalence(std::uint64_t trials,
                                const LinearScenario& scenario,
                                RngStream& rng) {
  require_bias(scenario.west_origin_probability);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const int current = draw_current_station(scenario, rng);
    const double x = draw_pointer_avoiding(scenario.pointer,
                                           static_cast<double>(current), rng);
    const Direction first = passenger_guess(x, current);
    const Direction second = passenger_guess(x, current);
    if (first != second) return false;
  }
  return true;
}

std::uint64_t independent_pointer_mismatches(std::uint64_t trials,
                                             const LinearScenario& scenario,
                                             RngStream& rng) {
  require_bias(scenario.west_origin_probability);
  std::uint64_t mismatches = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const int current = draw_current_station(scenario, rng);
    const double x1 = draw_pointer_avoiding(scenario.pointer,
                                            static_cast<double>(current), rng);
    const double x2 = draw_pointer_avoiding(scenario.pointer,
                                            static_cast<double>(current), rng);
    if (passenger_guess(x1, current) != passenger_guess(x2, current)) {
      ++mismatches;
    }
  }
  return mismatches;
}

}  // namespace coinguess
