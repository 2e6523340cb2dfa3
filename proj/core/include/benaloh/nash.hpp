#pragma once

#include "benaloh/game.hpp"

namespace benaloh {

// Thrown when the indifference system that pins down the device's
// equilibrium mixture has no solution that is a strictly interior
// probability distribution over the cheating rounds.
class no_interior_equilibrium_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything the unique mixed Nash equilibrium consists of.
struct NashSolution {
  VoterMixedStrategy voter_mixed;
  VoterBehavioralStrategy voter_behavioral;  // Kuhn image of voter_mixed
  DeviceMixedStrategy device;
  PayoffPair payoffs;  // expected payoffs at the equilibrium
  double odds_ratio = 0.0;  // asucc_D / (asucc_D + afail_D)
};

// How far a strategy profile is from being an equilibrium.
struct EquilibriumReport {
  bool is_equilibrium = false;
  double voter_gain = 0.0;   // best payoff improvement from a pure voter deviation
  double device_gain = 0.0;  // same for the device, never-cheat included
  double voter_spread = 0.0;   // max - min of the voter's per-round payoffs
  double device_spread = 0.0;  // max - min of the device's per-round payoffs
  std::vector<double> voter_round_payoffs;   // E[u_V | cast in round n]
  std::vector<double> device_round_payoffs;  // E[u_D | first cheat in round n]
  double device_never_payoff = 0.0;          // E[u_D | never cheat] (always 0)
  double tolerance = 0.0;
};

// The device's odds of gaining from an undetected cheat relative to the
// total stakes: R = asucc_D / (asucc_D + afail_D).  Drives every closed form
// below.
double device_odds_ratio(const GameParams& params);

// Voter equilibrium mixture: a truncated geometric distribution,
// p_n proportional to R^(n-1).
VoterMixedStrategy nash_voter_mixed(const GameParams& params);

// The same plan round by round: b_n = (1 - R) / (1 - R^(n_max - n + 1)).
VoterBehavioralStrategy nash_voter_behavioral(const GameParams& params);

// Device equilibrium mixture, obtained by solving the voter-indifference
// linear system.  Throws no_interior_equilibrium_error if the system is
// singular or yields a component outside (0, 1).
DeviceMixedStrategy nash_device(const GameParams& params);

// Full equilibrium profile with expected payoffs.
NashSolution nash_solution(const GameParams& params);

// Memoryless approximation to the behavioral equilibrium: cast with
// probability 1 - R in every round before the last, then cast for sure.
// Nearly indistinguishable from the exact plan once R is small.
VoterBehavioralStrategy approx_behavioral(const GameParams& params);

// Checks mutual best response by scanning all pure deviations for both
// players.  The profile passes when neither player can gain more than tol.
EquilibriumReport verify_equilibrium(const VoterMixedStrategy& voter,
                                     const DeviceMixedStrategy& device,
                                     const GameParams& params,
                                     double tol = 1e-9);

}  // namespace benaloh
