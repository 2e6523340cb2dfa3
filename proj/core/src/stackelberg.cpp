#include "benaloh/stackelberg.hpp"

#include "benaloh/nash.hpp"

#include <algorithm>
#include <cmath>

namespace benaloh {

namespace {

void require_two_rounds(const GameParams& params) {
  params.validate();
  if (params.max_rounds != 2) {
    throw unsupported_horizon_error(
        "commitment analysis is only available for the two-round game");
  }
}

}  // namespace

double nash_cast_probability(const GameParams& params) {
  require_two_rounds(params);
  return (params.device_success_reward + params.device_caught_penalty) /
         (2.0 * params.device_success_reward + params.device_caught_penalty);
}

BestResponseSet best_response_device(double cast_probability,
                                     const GameParams& params) {
  require_two_rounds(params);
  if (!(cast_probability >= 0.0 && cast_probability <= 1.0)) {
    throw std::invalid_argument("cast probability must lie in [0, 1]");
  }
  // d/dq E[u_D] = p (2 asucc_D + afail_D) - (asucc_D + afail_D), where q is
  // the device's round-1 cheat weight: the sign flips exactly at the Nash
  // threshold.
  const double threshold = nash_cast_probability(params);
  BestResponseSet set;
  if (cast_probability < threshold) {
    set.kind = BestResponseKind::only_honest_first;
  } else if (cast_probability > threshold) {
    set.kind = BestResponseKind::only_cheat_first;
  } else {
    set.kind = BestResponseKind::full_interval;
  }
  return set;
}

double utility_vs_best_response(double cast_probability,
                                const GameParams& params) {
  require_two_rounds(params);
  if (!(cast_probability >= 0.0 && cast_probability <= 1.0)) {
    throw std::invalid_argument("cast probability must lie in [0, 1]");
  }
  const double p = cast_probability;
  const double threshold = nash_cast_probability(params);
  if (p < threshold) {
    // Device prefers waiting honestly in round 1 and cheating in round 2;
    // the voter succeeds immediately with probability p and walks into the
    // round-2 cheat otherwise.
    return p * params.voter_success_reward -
           (1.0 - p) * (params.audit_cost + params.voter_cheated_penalty);
  }
  // At the threshold the device is indifferent; ties break against the
  // voter, which selects the immediate-cheat branch, the same branch that
  // is uniquely optimal above the threshold.
  return -p * params.voter_cheated_penalty - (1.0 - p) * params.audit_cost;
}

double stackelberg_value(const GameParams& params) {
  require_two_rounds(params);
  // Left limit of the honest branch at the Nash threshold:
  // (asucc_D (asucc_V - afail_V - c_audit) + afail_D asucc_V)
  //   / (2 asucc_D + afail_D).
  return (params.device_success_reward *
              (params.voter_success_reward - params.voter_cheated_penalty -
               params.audit_cost) +
          params.device_caught_penalty * params.voter_success_reward) /
         (2.0 * params.device_success_reward + params.device_caught_penalty);
}

EpsilonOptimal epsilon_optimal(const GameParams& params, double epsilon) {
  require_two_rounds(params);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be > 0");
  }
  const double threshold = nash_cast_probability(params);
  // The honest branch climbs with slope asucc_V + afail_V + c_audit, so
  // stepping delta below the threshold forfeits exactly slope * delta.
  const double slope = params.voter_success_reward +
                       params.voter_cheated_penalty + params.audit_cost;
  const double delta = std::min(epsilon / slope, threshold / 2.0);

  EpsilonOptimal result;
  result.cast_probability = threshold - delta;
  // Guard against rounding onto the threshold itself, where the payoff
  // drops to the lower branch.
  while (result.cast_probability >= threshold) {
    result.cast_probability =
        std::nextafter(result.cast_probability, 0.0);
  }
  result.guaranteed = utility_vs_best_response(result.cast_probability, params);
  return result;
}

StackelbergReport compare_nash_stackelberg(const GameParams& params,
                                           double epsilon) {
  require_two_rounds(params);
  StackelbergReport report;
  report.sval = stackelberg_value(params);
  report.nash_cast_probability = nash_cast_probability(params);
  report.nash_voter_payoff = nash_solution(params).payoffs.voter;
  report.epsilon = epsilon;
  const EpsilonOptimal eps = epsilon_optimal(params, epsilon);
  report.epsilon_cast_probability = eps.cast_probability;
  report.epsilon_guaranteed = eps.guaranteed;
  if (!(report.sval > report.nash_voter_payoff)) {
    throw std::logic_error(
        "commitment value failed to exceed the simultaneous-play payoff");
  }
  return report;
}

}  // namespace benaloh
