#pragma once

#include "benaloh/game.hpp"

namespace benaloh {

// The device's best-response set to a committed voter first-round cast
// probability.  In the two-round game the device's expected payoff is
// linear in its own mixing weight, so the set is one of three shapes.
enum class BestResponseKind {
  only_honest_first,  // unique best response: never cheat in round 1
  only_cheat_first,   // unique best response: always cheat in round 1
  full_interval,      // indifferent: every mixture is a best response
};

struct BestResponseSet {
  BestResponseKind kind = BestResponseKind::full_interval;
};

// An almost-optimal voter commitment, together with the payoff it secures.
struct EpsilonOptimal {
  double cast_probability = 0.0;  // commit to casting first with this probability
  double guaranteed = 0.0;        // worst-case payoff against best responses
};

// Side-by-side comparison of simultaneous play and voter commitment.
struct StackelbergReport {
  double sval = 0.0;                // supremum of commitment payoffs
  double nash_cast_probability = 0.0;  // voter's round-1 cast weight at the Nash point
  double nash_voter_payoff = 0.0;
  double epsilon = 0.0;
  double epsilon_cast_probability = 0.0;
  double epsilon_guaranteed = 0.0;
};

// The voter's equilibrium round-1 cast probability,
// (asucc_D + afail_D) / (2 asucc_D + afail_D).  Commitments are measured
// against this threshold: below it the device prefers honesty, above it the
// device cheats immediately.
double nash_cast_probability(const GameParams& params);

// Device best responses to a committed cast probability p in [0, 1].
BestResponseSet best_response_device(double cast_probability,
                                     const GameParams& params);

// The voter's expected payoff at commitment p when the device best-responds,
// breaking device indifference against the voter.  Increasing and linear
// below the Nash threshold, then drops to the lower branch at and above it.
double utility_vs_best_response(double cast_probability,
                                const GameParams& params);

// Supremum of utility_vs_best_response over [0, 1].  Not attained by any
// commitment: the maximizing sequence approaches the Nash threshold from
// below.
double stackelberg_value(const GameParams& params);

// A commitment guaranteeing at least stackelberg_value - epsilon.
// Requires epsilon > 0; backs off the Nash threshold by
// min(epsilon / (asucc_V + afail_V + c_audit), threshold / 2).
EpsilonOptimal epsilon_optimal(const GameParams& params, double epsilon);

// Bundles the commitment analysis with the simultaneous-play payoff.
// The gap sval - nash_voter_payoff is strictly positive; this is checked
// and a violation reported as a logic error.
StackelbergReport compare_nash_stackelberg(const GameParams& params,
                                           double epsilon);

}  // namespace benaloh
