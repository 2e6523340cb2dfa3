#include "benaloh/game.hpp"

#include <cmath>
#include <sstream>

namespace benaloh {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_probability_entries(const std::vector<double>& probs,
                               const char* what) {
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      std::ostringstream oss;
      oss << what << "[" << i << "] = " << p << " is not a probability";
      throw std::invalid_argument(oss.str());
    }
  }
}

void check_total_mass(double total, const char* what) {
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    std::ostringstream oss;
    oss << what << " mass " << total << " does not sum to 1";
    throw std::invalid_argument(oss.str());
  }
}

}  // namespace

void GameParams::validate() const {
  require(std::isfinite(voter_success_reward) && voter_success_reward > 0.0,
          "asucc_V must be > 0");
  require(std::isfinite(voter_cheated_penalty) && voter_cheated_penalty > 0.0,
          "afail_V must be > 0");
  require(std::isfinite(device_success_reward) && device_success_reward > 0.0,
          "asucc_D must be > 0");
  require(std::isfinite(device_caught_penalty) && device_caught_penalty > 0.0,
          "afail_D must be > 0");
  require(std::isfinite(audit_cost) && audit_cost > 0.0, "c_audit must be > 0");
  require(audit_cost < voter_cheated_penalty, "c_audit must be < afail_V");
  require(max_rounds >= 1, "n_max must be >= 1");
  require(max_rounds <= kMaxSupportedRounds,
          "n_max exceeds the supported horizon of 64");
}

void VoterMixedStrategy::validate() const {
  require(!probs.empty(), "voter strategy must cover at least one round");
  check_probability_entries(probs, "voter probs");
  double total = 0.0;
  for (double p : probs) total += p;
  check_total_mass(total, "voter strategy");
}

void DeviceMixedStrategy::validate() const {
  require(!probs.empty(), "device strategy must cover at least one round");
  check_probability_entries(probs, "device probs");
  require(std::isfinite(p_never) && p_never >= 0.0 && p_never <= 1.0,
          "p_never is not a probability");
  double total = p_never;
  for (double p : probs) total += p;
  check_total_mass(total, "device strategy");
}

void VoterBehavioralStrategy::validate() const {
  require(!probs.empty(), "behavioral strategy must cover at least one round");
  check_probability_entries(probs, "behavioral probs");
  if (std::abs(probs.back() - 1.0) > kProbabilityTolerance) {
    std::ostringstream oss;
    oss << "behavioral strategy must cast at the last round; final entry is "
        << probs.back();
    throw residual_probability_error(oss.str());
  }
}

PayoffPair payoff(int cast_round, int cheat_round, const GameParams& params) {
  params.validate();
  require(cast_round >= 1 && cast_round <= params.max_rounds,
          "cast round out of range");
  require(cheat_round == kNeverCheats ||
              (cheat_round >= 1 && cheat_round <= params.max_rounds),
          "cheat round out of range");

  const double audits_paid = static_cast<double>(cast_round - 1) * params.audit_cost;
  if (cast_round < cheat_round) {
    // Ballot cast as intended before the device ever deviates.
    return {params.voter_success_reward - audits_paid, 0.0};
  }
  if (cast_round == cheat_round) {
    // The manipulated ballot is the one that counts.
    return {-params.voter_cheated_penalty - audits_paid,
            params.device_success_reward};
  }
  // cast_round > cheat_round: the audit in round cheat_round exposes the
  // device, after cheat_round audits have been paid for.
  return {-static_cast<double>(cheat_round) * params.audit_cost,
          -params.device_caught_penalty};
}

PayoffPair expected_payoffs(const VoterMixedStrategy& voter,
                            const DeviceMixedStrategy& device,
                            const GameParams& params) {
  params.validate();
  voter.validate();
  device.validate();
  const std::size_t n = static_cast<std::size_t>(params.max_rounds);
  require(voter.probs.size() == n, "voter strategy length must equal n_max");
  require(device.probs.size() == n, "device strategy length must equal n_max");

  PayoffPair expectation;
  for (int cast = 1; cast <= params.max_rounds; ++cast) {
    const double pv = voter.probs[static_cast<std::size_t>(cast - 1)];
    if (pv == 0.0) continue;
    for (int cheat = 1; cheat <= params.max_rounds; ++cheat) {
      const double pd = device.probs[static_cast<std::size_t>(cheat - 1)];
      if (pd == 0.0) continue;
      const PayoffPair u = payoff(cast, cheat, params);
      expectation.voter += pv * pd * u.voter;
      expectation.device += pv * pd * u.device;
    }
    if (device.p_never > 0.0) {
      const PayoffPair u = payoff(cast, kNeverCheats, params);
      expectation.voter += pv * device.p_never * u.voter;
      expectation.device += pv * device.p_never * u.device;
    }
  }
  return expectation;
}

VoterMixedStrategy behavioral_to_mixed(const VoterBehavioralStrategy& behavioral) {
  behavioral.validate();
  VoterMixedStrategy mixed;
  mixed.probs.resize(behavioral.probs.size());
  // p_n = b_n * prod_{i<n} (1 - b_i): cast at n requires auditing first.
  double reach = 1.0;
  for (std::size_t i = 0; i < behavioral.probs.size(); ++i) {
    mixed.probs[i] = reach * behavioral.probs[i];
    reach *= 1.0 - behavioral.probs[i];
  }
  return mixed;
}

VoterBehavioralStrategy mixed_to_behavioral(const VoterMixedStrategy& mixed) {
  mixed.validate();
  const std::size_t n = mixed.probs.size();

  // Conditional cast probabilities b_n = p_n / P(cast in round n or later).
  // Accumulating the denominator as a suffix sum keeps tiny tails accurate,
  // which a 1 - prefix formulation would cancel away.
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i > 0; --i) tail[i - 1] = tail[i] + mixed.probs[i - 1];

  VoterBehavioralStrategy behavioral;
  behavioral.probs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (tail[i] <= 0.0) {
      // No mass at this round or after it: the round is unreachable and the
      // conditional choice is arbitrary.  Commit to casting so the resulting
      // plan is always complete.
      if (mixed.probs[i] > 0.0) {
        std::ostringstream oss;
        oss << "round " << (i + 1) << " carries probability " << mixed.probs[i]
            << " but is unreachable";
        throw degenerate_tail_error(oss.str());
      }
      behavioral.probs[i] = 1.0;
      continue;
    }
    double b = mixed.probs[i] / tail[i];
    if (b > 1.0) b = 1.0;  // guard against rounding just above 1
    behavioral.probs[i] = b;
  }
  behavioral.probs[n - 1] = 1.0;
  return behavioral;
}

}  // namespace benaloh
