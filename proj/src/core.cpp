#include "coinguess/core.hpp"

#include <stdexcept>

namespace coinguess {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer; bijective, full avalanche.
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

const char* to_string(CoinFace face) {
  return face == CoinFace::Heads ? "heads" : "tails";
}

const char* to_string(Direction direction) {
  switch (direction) {
    case Direction::East: return "east";
    case Direction::West: return "west";
    case Direction::CW: return "cw";
    case Direction::CCW: return "ccw";
  }
  return "?";
}

const char* to_string(TrialMode mode) {
  switch (mode) {
    case TrialMode::Postdiction: return "postdiction";
    case TrialMode::PredictionDestinationFirst: return "prediction-destination-first";
    case TrialMode::PredictionOriginFirst: return "prediction-origin-first";
  }
  return "?";
}

Coin::Coin(double p) : heads_probability(p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(
        "Coin: heads probability must lie strictly between 0 and 1");
  }
}

void require_fair(const Coin& coin) {
  if (!coin.is_fair()) {
    throw std::invalid_argument(
        "closed-form calculators require a fair coin "
        "(heads probability exactly 1/2); bias is simulation-only");
  }
}

bool operator==(const TrialRecord& a, const TrialRecord& b) {
  return a.scenario_id == b.scenario_id && a.coin_outcome == b.coin_outcome &&
         a.actual_direction == b.actual_direction &&
         a.guessed_direction == b.guessed_direction && a.correct == b.correct &&
         a.mode == b.mode && a.seed_index == b.seed_index;
}

TrialRecord make_trial_record(std::string scenario_id, CoinFace outcome,
                              Direction guessed, TrialMode mode,
                              Geometry geometry, std::uint64_t seed_index) {
  TrialRecord record;
  record.scenario_id = std::move(scenario_id);
  record.coin_outcome = outcome;
  record.actual_direction = direction_of(outcome, geometry);
  record.guessed_direction = guessed;
  record.correct = record.guessed_direction == record.actual_direction;
  record.mode = mode;
  record.seed_index = seed_index;
  return record;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  // Hash both components through the avalanche function so each stream
  // starts at an unrelated point of the splitmix orbit; consecutive stream
  // ids must not yield shifted copies of the same sequence.
  state_ = mix64(mix64(master_seed + kGolden) ^ mix64(stream_id * 0xD1B54A32D192ED03ULL + 0x63D3C5E5C7B3C99DULL));
}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("RngStream::uniform: lo < hi required");
  }
  return lo + next_double() * (hi - lo);
}

bool RngStream::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("RngStream::bernoulli: p must lie in [0,1]");
  }
  return next_double() < p;
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("RngStream::below: n must be positive");
  }
  // Classic rejection against the biased tail keeps the result unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

CoinFace flip(const Coin& coin, RngStream& rng) {
  return rng.next_double() < coin.heads_probability ? CoinFace::Heads
                                                    : CoinFace::Tails;
}

Direction direction_of(CoinFace outcome, Geometry geometry) {
  if (geometry == Geometry::Linear) {
    return outcome == CoinFace::Heads ? Direction::East : Direction::West;
  }
  return outcome == CoinFace::Heads ? Direction::CW : Direction::CCW;
}

}  // namespace coinguess
