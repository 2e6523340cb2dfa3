#pragma once

#include "benaloh/game.hpp"

#include <cstdint>
#include <variant>

namespace benaloh {

// One Monte Carlo run: repeated independent plays of the game under fixed
// mixed/behavioral strategies.
struct SimConfig {
  GameParams params;
  std::variant<VoterMixedStrategy, VoterBehavioralStrategy> voter;
  DeviceMixedStrategy device;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 42;
};

struct SimResult {
  double mean_voter = 0.0;
  double mean_device = 0.0;
  double stderr_voter = 0.0;   // sample standard deviation / sqrt(trials)
  double stderr_device = 0.0;
  double freq_cast_as_intended = 0.0;  // voter cast before any cheat
  double freq_cheated = 0.0;           // manipulated ballot went through
  double freq_caught = 0.0;            // audit exposed the device
  std::int64_t trials = 0;
};

// Runs the simulation.  Each trial derives its random draws from
// (seed, trial index) alone, so results are bit-identical for a given seed
// regardless of how trials might be batched.  Throws std::invalid_argument
// for dimension mismatches or trials < 1.
SimResult simulate(const SimConfig& config);

// Runs a mixed-strategy simulation next to a behavioral one and checks that
// they tell the same story: each mean within three combined standard errors
// of the other, and likewise for the outcome frequencies.
struct EquivalenceReport {
  SimResult mixed_run;
  SimResult behavioral_run;
  bool payoffs_agree = false;
  bool frequencies_agree = false;
  double worst_payoff_margin = 0.0;     // max over means of |gap| - allowance
  double worst_frequency_margin = 0.0;  // same for the three frequencies
};

// The two configs must share params, device strategy, trial count, and hold
// voter strategies that are Kuhn images of one another; anything else is an
// invalid argument.
EquivalenceReport simulate_equivalence(const SimConfig& mixed_config,
                                       const SimConfig& behavioral_config);

}  // namespace benaloh
