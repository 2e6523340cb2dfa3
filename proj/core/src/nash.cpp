#include "benaloh/nash.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace benaloh {

namespace {

// Solves A x = b in place by Gaussian elimination with partial pivoting.
// Returns false when A is numerically singular.  Dimensions here are at
// most kMaxSupportedRounds, so dense elimination is more than enough.
bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-14) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t i = n; i > 0; --i) {
    const std::size_t row = i - 1;
    double sum = b[row];
    for (std::size_t k = row + 1; k < n; ++k) sum -= a[row][k] * b[k];
    b[row] = sum / a[row][row];
  }
  return true;
}

// E[u_V | cast in round n] against a mixed device strategy.
double voter_round_payoff(int cast, const DeviceMixedStrategy& device,
                          const GameParams& params) {
  double value = 0.0;
  for (int cheat = 1; cheat <= params.max_rounds; ++cheat) {
    const double pd = device.probs[static_cast<std::size_t>(cheat - 1)];
    if (pd != 0.0) value += pd * payoff(cast, cheat, params).voter;
  }
  if (device.p_never != 0.0) {
    value += device.p_never * payoff(cast, kNeverCheats, params).voter;
  }
  return value;
}

// E[u_D | first cheat in round m] against a mixed voter strategy.
double device_round_payoff(int cheat, const VoterMixedStrategy& voter,
                           const GameParams& params) {
  double value = 0.0;
  for (int cast = 1; cast <= params.max_rounds; ++cast) {
    const double pv = voter.probs[static_cast<std::size_t>(cast - 1)];
    if (pv != 0.0) value += pv * payoff(cast, cheat, params).device;
  }
  return value;
}

}  // namespace

double device_odds_ratio(const GameParams& params) {
  params.validate();
  return params.device_success_reward /
         (params.device_success_reward + params.device_caught_penalty);
}

VoterMixedStrategy nash_voter_mixed(const GameParams& params) {
  const double r = device_odds_ratio(params);
  const std::size_t n = static_cast<std::size_t>(params.max_rounds);

  // p_n = (1 - R) R^(n-1) / (1 - R^n_max); powers built iteratively so the
  // weights are exactly geometric.
  std::vector<double> weights(n);
  double power = 1.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = power;
    total += power;
    power *= r;
  }
  VoterMixedStrategy mixed;
  mixed.probs.resize(n);
  for (std::size_t i = 0; i < n; ++i) mixed.probs[i] = weights[i] / total;
  return mixed;
}

VoterBehavioralStrategy nash_voter_behavioral(const GameParams& params) {
  const double r = device_odds_ratio(params);
  const std::size_t n = static_cast<std::size_t>(params.max_rounds);

  // b_n = (1 - R) / (1 - R^(n_max - n + 1)); the last entry divides by
  // 1 - R and is exactly 1.
  std::vector<double> powers(n + 1);  // powers[k] = R^k
  powers[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) powers[k] = powers[k - 1] * r;

  VoterBehavioralStrategy behavioral;
  behavioral.probs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    behavioral.probs[i] = (1.0 - r) / (1.0 - powers[n - i]);
  }
  behavioral.probs[n - 1] = 1.0;
  return behavioral;
}

DeviceMixedStrategy nash_device(const GameParams& params) {
  params.validate();
  const int n = params.max_rounds;
  const std::size_t un = static_cast<std::size_t>(n);

  if (n == 1) {
    // One round: the device cheats immediately with certainty.
    DeviceMixedStrategy device;
    device.probs = {1.0};
    device.p_never = 0.0;
    return device;
  }

  // Unknowns q_1..q_n (first-cheat round probabilities; never-cheat mass is
  // zero in equilibrium).  Rows 1..n-1 impose voter indifference
  // u_V(k, q) = u_V(k+1, q); the last row imposes normalization.
  std::vector<std::vector<double>> a(un, std::vector<double>(un, 0.0));
  std::vector<double> b(un, 0.0);
  for (int k = 1; k < n; ++k) {
    auto& row = a[static_cast<std::size_t>(k - 1)];
    for (int m = 1; m <= n; ++m) {
      const double diff = payoff(k, m, params).voter - payoff(k + 1, m, params).voter;
      row[static_cast<std::size_t>(m - 1)] = diff;
    }
  }
  for (std::size_t m = 0; m < un; ++m) a[un - 1][m] = 1.0;
  b[un - 1] = 1.0;

  if (!solve_dense(a, b)) {
    throw no_interior_equilibrium_error(
        "voter-indifference system is singular");
  }
  for (std::size_t m = 0; m < un; ++m) {
    if (!(b[m] > 0.0 && b[m] < 1.0)) {
      std::ostringstream oss;
      oss << "indifference solution assigns probability " << b[m]
          << " to cheating round " << (m + 1);
      throw no_interior_equilibrium_error(oss.str());
    }
  }

  DeviceMixedStrategy device;
  device.probs = std::move(b);
  device.p_never = 0.0;
  return device;
}

NashSolution nash_solution(const GameParams& params) {
  NashSolution solution;
  solution.voter_mixed = nash_voter_mixed(params);
  solution.voter_behavioral = nash_voter_behavioral(params);
  solution.device = nash_device(params);
  solution.payoffs = expected_payoffs(solution.voter_mixed, solution.device, params);
  solution.odds_ratio = device_odds_ratio(params);
  return solution;
}

VoterBehavioralStrategy approx_behavioral(const GameParams& params) {
  const double r = device_odds_ratio(params);
  VoterBehavioralStrategy behavioral;
  behavioral.probs.assign(static_cast<std::size_t>(params.max_rounds), 1.0 - r);
  behavioral.probs.back() = 1.0;
  return behavioral;
}

EquilibriumReport verify_equilibrium(const VoterMixedStrategy& voter,
                                     const DeviceMixedStrategy& device,
                                     const GameParams& params, double tol) {
  params.validate();
  voter.validate();
  device.validate();
  const std::size_t n = static_cast<std::size_t>(params.max_rounds);
  if (voter.probs.size() != n || device.probs.size() != n) {
    throw std::invalid_argument("strategy length must equal n_max");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");

  EquilibriumReport report;
  report.tolerance = tol;
  report.voter_round_payoffs.resize(n);
  report.device_round_payoffs.resize(n);
  for (int round = 1; round <= params.max_rounds; ++round) {
    report.voter_round_payoffs[static_cast<std::size_t>(round - 1)] =
        voter_round_payoff(round, device, params);
    report.device_round_payoffs[static_cast<std::size_t>(round - 1)] =
        device_round_payoff(round, voter, params);
  }
  report.device_never_payoff = 0.0;  // honest devices earn nothing either way

  double eu_voter = 0.0;
  double eu_device = device.p_never * report.device_never_payoff;
  for (std::size_t i = 0; i < n; ++i) {
    eu_voter += voter.probs[i] * report.voter_round_payoffs[i];
    eu_device += device.probs[i] * report.device_round_payoffs[i];
  }

  const auto [v_min, v_max] = std::minmax_element(
      report.voter_round_payoffs.begin(), report.voter_round_payoffs.end());
  const auto [d_min, d_max] = std::minmax_element(
      report.device_round_payoffs.begin(), report.device_round_payoffs.end());
  report.voter_spread = *v_max - *v_min;
  report.device_spread = *d_max - *d_min;

  report.voter_gain = *v_max - eu_voter;
  report.device_gain =
      std::max(*d_max, report.device_never_payoff) - eu_device;
  report.is_equilibrium =
      report.voter_gain <= tol && report.device_gain <= tol;
  return report;
}

}  // namespace benaloh
