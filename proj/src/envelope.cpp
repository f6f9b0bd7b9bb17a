#include "coinguess/envelope.hpp"

#include <stdexcept>

namespace coinguess {

EnvelopePair::EnvelopePair(double lesser, double greater)
    : lesser(lesser), greater(greater) {
  if (!(0.0 < lesser && lesser < greater)) {
    throw std::invalid_argument("EnvelopePair: 0 < lesser < greater required");
  }
}

double analytic_success(const ContinuousPointer& dist,
                        const EnvelopePair& pair) {
  const GapProbabilities gap =
      gap_probabilities(dist, pair.lesser, pair.greater);
  return 1.0 - 0.5 * (gap.below + gap.above);
}

namespace {

double draw_pointer_avoiding(const ContinuousPointer& dist, double observed,
                             RngStream& rng) {
  // An exact tie with the observed amount carries no information either
  // way; redraw (probability-zero event for continuous laws).
  double x = sample(dist, rng);
  while (x == observed) x = sample(dist, rng);
  return x;
}

}  // namespace

TrialRecord play_round(const EnvelopePair& pair, const ContinuousPointer& dist,
                       RngStream& rng) {
  const bool picked_greater = rng.bernoulli(0.5);
  const double observed = picked_greater ? pair.greater : pair.lesser;
  const double x = draw_pointer_avoiding(dist, observed, rng);
  const bool switched = x > observed;
  const bool final_is_greater = picked_greater != switched;
  // Fixed labeling: the greater amount sits in the heads envelope, so the
  // round reduces to guessing heads by landing on it.
  return make_trial_record(
      "envelope", CoinFace::Heads,
      final_is_greater ? Direction::East : Direction::West,
      TrialMode::Postdiction, Geometry::Linear, rng.stream_id());
}

TrialRecord play_postdiction_round(const EnvelopePair& pair,
                                   const ContinuousPointer& dist,
                                   const Coin& coin, RngStream& rng) {
  const CoinFace outcome = flip(coin, rng);
  // The greater amount goes into the envelope labeled with the outcome.
  const bool picked_heads_envelope = rng.bernoulli(0.5);
  const bool picked_greater =
      picked_heads_envelope == (outcome == CoinFace::Heads);
  const double observed = picked_greater ? pair.greater : pair.lesser;
  const double x = draw_pointer_avoiding(dist, observed, rng);
  const bool switched = x > observed;
  const bool final_is_heads_envelope = picked_heads_envelope != switched;
  const CoinFace guessed_face =
      final_is_heads_envelope ? CoinFace::Heads : CoinFace::Tails;
  return make_trial_record("envelope-postdiction", outcome,
                           direction_of(guessed_face, Geometry::Linear),
                           TrialMode::Postdiction, Geometry::Linear,
                           rng.stream_id());
}

}  // namespace coinguess
