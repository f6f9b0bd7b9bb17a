#pragma once

#include "coinguess/core.hpp"
#include "coinguess/pointer.hpp"

namespace coinguess {

// Two sealed amounts with 0 < lesser < greater.
struct EnvelopePair {
  double lesser;
  double greater;

  EnvelopePair(double lesser, double greater);
};

// Success probability of the pointer-switching strategy: open one envelope,
// draw an independent pointer x, keep the envelope iff x falls below the
// observed amount. Equals 1 - (P(x < lesser) + P(x > greater)) / 2, which
// is strictly above 1/2 whenever the pointer puts mass between the amounts.
// Fair 50/50 placement is baked into the formula.
double analytic_success(const ContinuousPointer& dist,
                        const EnvelopePair& pair);

// One round of the switching strategy. Correct means the final choice holds
// the greater amount. A pointer that ties the observed amount exactly is
// redrawn.
TrialRecord play_round(const EnvelopePair& pair, const ContinuousPointer& dist,
                       RngStream& rng);

// Same game phrased as a coin guess: the coin is flipped first and its
// outcome labels the envelope holding the greater amount; the player ends
// up guessing the outcome by picking an envelope. The pick is uniform over
// the two labels, so the success probability equals analytic_success even
// for a biased coin; bias runs exist to confirm that invariance.
TrialRecord play_postdiction_round(const EnvelopePair& pair,
                                   const ContinuousPointer& dist,
                                   const Coin& coin, RngStream& rng);

}  // namespace coinguess
