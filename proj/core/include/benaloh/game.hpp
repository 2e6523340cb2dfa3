#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Finite inspection game played between a voter and a vote-casting device.
//
// The voter privately decides in which round n_cast (1-based) to cast for
// real; every earlier round is an audit.  The device decides in which round
// n_cheat to first deviate from the voter's intent, or to stay honest
// forever.  A trial ends at round min(n_cast, n_cheat): the voter either
// casts as intended (n_cast < n_cheat), casts a manipulated ballot
// (n_cast == n_cheat), or catches the device in an audit (n_cast > n_cheat).
//
// All functions in this library are pure and touch no global state, so they
// are safe to call concurrently.

namespace benaloh {

// Device action "never cheat".  Modelled as a round index beyond any horizon
// so the usual integer comparisons against n_cast do the right thing.
inline constexpr int kNeverCheats = std::numeric_limits<int>::max();

// Largest supported horizon.  Solvers use dense O(n^3) linear algebra and
// exhaustive tree walks, which are instantaneous at this scale.
inline constexpr int kMaxSupportedRounds = 64;

// Slack allowed when checking that probabilities sum to one.
inline constexpr double kProbabilityTolerance = 1e-9;

// Thrown when a strategy that must commit to casting by the last round
// leaves residual probability mass on "never cast".
class residual_probability_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when a mixed->behavioral conversion hits a round whose conditional
// probability is undefined because the strategy can never reach it with the
// remaining mass it would need.
class degenerate_tail_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown by commitment-analysis functions when the horizon is not the
// two-round game their closed forms are worked out for.
class unsupported_horizon_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Game parameters.  All five payoff magnitudes are positive, and auditing
// must cost the voter less than being cheated (audit_cost <
// voter_cheated_penalty), otherwise auditing could never pay off.
struct GameParams {
  double voter_success_reward = 0.0;   // voter casts as intended
  double voter_cheated_penalty = 0.0;  // device's manipulated ballot goes through
  double device_success_reward = 0.0;  // device cheats undetected
  double device_caught_penalty = 0.0;  // device is caught in an audit
  double audit_cost = 0.0;             // voter's cost per audit performed
  int max_rounds = 0;                  // horizon n_max >= 1

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  bool operator==(const GameParams&) const = default;
};

// Payoffs for one play of the game, voter first.
struct PayoffPair {
  double voter = 0.0;
  double device = 0.0;

  bool operator==(const PayoffPair&) const = default;
};

// Distribution over the voter's casting round; probs[i] is the probability
// of casting in round i+1.
struct VoterMixedStrategy {
  std::vector<double> probs;

  // Throws std::invalid_argument unless entries lie in [0,1] and sum to one
  // within kProbabilityTolerance.
  void validate() const;
};

// Distribution over the device's first-cheat round, plus an atom p_never on
// staying honest forever.
struct DeviceMixedStrategy {
  std::vector<double> probs;
  double p_never = 0.0;

  // Throws std::invalid_argument unless entries and p_never lie in [0,1]
  // and the total mass is one within kProbabilityTolerance.
  void validate() const;
};

// Round-by-round plan: probs[i] is the probability of casting in round i+1
// conditional on having audited every round before it.  A complete plan must
// cast at the horizon, so the final entry is 1.
struct VoterBehavioralStrategy {
  std::vector<double> probs;

  // Throws std::invalid_argument for out-of-range entries and
  // residual_probability_error when the final entry is not 1 within
  // kProbabilityTolerance.
  void validate() const;
};

// Terminal payoffs when the voter casts in round cast_round and the device
// first cheats in round cheat_round (kNeverCheats for an always-honest
// device).  cast_round must lie in [1, params.max_rounds].
PayoffPair payoff(int cast_round, int cheat_round, const GameParams& params);

// Expected payoffs under independent mixing by both players.  Strategy
// lengths must equal params.max_rounds.
PayoffPair expected_payoffs(const VoterMixedStrategy& voter,
                            const DeviceMixedStrategy& device,
                            const GameParams& params);

// Kuhn's theorem conversions between the two voter representations.  The
// round-trip mixed -> behavioral -> mixed reproduces the input to high
// accuracy whenever every prefix keeps positive continuation mass.
VoterMixedStrategy behavioral_to_mixed(const VoterBehavioralStrategy& behavioral);
VoterBehavioralStrategy mixed_to_behavioral(const VoterMixedStrategy& mixed);

}  // namespace benaloh
