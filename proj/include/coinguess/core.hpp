#pragma once

#include <cstdint>
#include <string>

namespace coinguess {

enum class CoinFace { Heads, Tails };

enum class Geometry { Linear, Circular };

// East/West label directions on a linear track, CW/CCW on a circular one.
// Heads always maps to East respectively CW; tails to West respectively CCW.
enum class Direction { East, West, CW, CCW };

enum class TrialMode { Postdiction, PredictionDestinationFirst, PredictionOriginFirst };

const char* to_string(CoinFace face);
const char* to_string(Direction direction);
const char* to_string(TrialMode mode);

// Coin with an explicit heads probability, strictly inside (0,1).
// Simulators accept any bias; closed-form calculators call require_fair()
// and reject everything but an exact 1/2, because their formulas silently
// assume it.
struct Coin {
  double heads_probability = 0.5;

  Coin() = default;
  explicit Coin(double p);

  bool is_fair() const { return heads_probability == 0.5; }
  static Coin fair() { return Coin{}; }
};

void require_fair(const Coin& coin);

// One simulated guess. Two invariants hold for every record produced by
// this library: correct == (guessed_direction == actual_direction), and
// actual_direction is the image of coin_outcome under the heads->East/CW
// mapping for the scenario's geometry. Use make_trial_record to keep them.
struct TrialRecord {
  std::string scenario_id;
  CoinFace coin_outcome = CoinFace::Heads;
  Direction actual_direction = Direction::East;
  Direction guessed_direction = Direction::East;
  bool correct = false;
  TrialMode mode = TrialMode::Postdiction;
  std::uint64_t seed_index = 0;
};

bool operator==(const TrialRecord& a, const TrialRecord& b);

TrialRecord make_trial_record(std::string scenario_id, CoinFace outcome,
                              Direction guessed, TrialMode mode,
                              Geometry geometry, std::uint64_t seed_index);

// Seeded random stream. The pair (master_seed, stream_id) fully determines
// the value sequence, independent of platform and of any other stream, so
// batch runs can hand stream i to trial i and stay reproducible under any
// worker partitioning. Distinct stream ids are statistically independent.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double next_double();  // uniform in [0,1), 53-bit resolution
  double uniform(double lo, double hi);
  bool bernoulli(double p);
  std::uint64_t below(std::uint64_t n);  // uniform in [0,n), unbiased

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

// Consumes exactly one uniform draw.
CoinFace flip(const Coin& coin, RngStream& rng);

Direction direction_of(CoinFace outcome, Geometry geometry);

}  // namespace coinguess
