#include "benaloh/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace benaloh {

namespace {

// Counter-based generator: every trial owns an independent stream derived
// from (seed, trial index) alone, so the schedule of trials cannot affect
// the numbers drawn and any trial can be reproduced in isolation.
// Mixing function and increment are the SplitMix64 constants.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : state_(mix(seed ^ mix(trial + 0x9E3779B97F4A7C15ULL))) {}

  // Uniform draw from [0, 1) with 53 random bits.
  double next_unit() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return static_cast<double>(mix(state_) >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

// Compensated summation; a million payoffs accumulate with error at the
// level of one rounding of the total.
struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double y = x - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
};

// Inverse-CDF draw over first-cheat rounds with the never-cheat atom placed
// after round n_max.  Rounding slack lands on the final option.
int sample_device_round(const DeviceMixedStrategy& device, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < device.probs.size(); ++i) {
    cumulative += device.probs[i];
    if (u < cumulative) return static_cast<int>(i) + 1;
  }
  if (device.p_never > 0.0) return kNeverCheats;
  return static_cast<int>(device.probs.size());
}

int sample_cast_round(const VoterMixedStrategy& voter, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < voter.probs.size(); ++i) {
    cumulative += voter.probs[i];
    if (u < cumulative) return static_cast<int>(i) + 1;
  }
  return static_cast<int>(voter.probs.size());
}

// Plays the rounds one by one: audit until the per-round coin says cast.
// The final entry is 1, so the loop always terminates with a cast.
int sample_cast_round(const VoterBehavioralStrategy& voter, TrialRng& rng) {
  for (std::size_t i = 0; i + 1 < voter.probs.size(); ++i) {
    if (rng.next_unit() < voter.probs[i]) return static_cast<int>(i) + 1;
  }
  return static_cast<int>(voter.probs.size());
}

double sample_stderr(const KahanSum& sum, const KahanSum& sum_squares,
                     std::int64_t trials) {
  if (trials < 2) return 0.0;
  const double n = static_cast<double>(trials);
  const double mean = sum.sum / n;
  double variance = (sum_squares.sum - n * mean * mean) / (n - 1.0);
  variance = std::max(variance, 0.0);
  return std::sqrt(variance / n);
}

double binomial_stderr(double frequency, std::int64_t trials) {
  const double n = static_cast<double>(trials);
  return std::sqrt(std::max(frequency * (1.0 - frequency), 0.0) / n);
}

}  // namespace

SimResult simulate(const SimConfig& config) {
  config.params.validate();
  config.device.validate();
  const std::size_t n = static_cast<std::size_t>(config.params.max_rounds);
  if (config.device.probs.size() != n) {
    throw std::invalid_argument("device strategy length must equal n_max");
  }
  const VoterMixedStrategy* mixed = std::get_if<VoterMixedStrategy>(&config.voter);
  const VoterBehavioralStrategy* behavioral =
      std::get_if<VoterBehavioralStrategy>(&config.voter);
  if (mixed != nullptr) {
    mixed->validate();
    if (mixed->probs.size() != n) {
      throw std::invalid_argument("voter strategy length must equal n_max");
    }
  } else {
    behavioral->validate();
    if (behavioral->probs.size() != n) {
      throw std::invalid_argument("voter strategy length must equal n_max");
    }
  }
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");

  // Outcomes depend only on the pair of rounds, so tabulate all n * (n + 1)
  // of them up front; column n holds the never-cheats case.  The trial loop
  // then touches nothing but the generator, the table, and the accumulators.
  std::vector<PayoffPair> outcomes(n * (n + 1));
  for (std::size_t cast = 1; cast <= n; ++cast) {
    for (std::size_t cheat = 1; cheat <= n; ++cheat) {
      outcomes[(cast - 1) * (n + 1) + (cheat - 1)] =
          payoff(static_cast<int>(cast), static_cast<int>(cheat), config.params);
    }
    outcomes[(cast - 1) * (n + 1) + n] =
        payoff(static_cast<int>(cast), kNeverCheats, config.params);
  }

  KahanSum voter_sum, voter_squares, device_sum, device_squares;
  std::int64_t count_as_intended = 0;
  std::int64_t count_cheated = 0;
  std::int64_t count_caught = 0;

  for (std::int64_t trial = 0; trial < config.trials; ++trial) {
    TrialRng rng(config.seed, static_cast<std::uint64_t>(trial));

    // Device commits first, then the voter; the order is part of the
    // reproducibility contract, not visible in the outcome distribution.
    const int cheat_round = sample_device_round(config.device, rng.next_unit());
    const int cast_round = mixed != nullptr
                               ? sample_cast_round(*mixed, rng.next_unit())
                               : sample_cast_round(*behavioral, rng);

    const std::size_t cheat_index = cheat_round == kNeverCheats
                                        ? n
                                        : static_cast<std::size_t>(cheat_round) - 1;
    const PayoffPair u =
        outcomes[(static_cast<std::size_t>(cast_round) - 1) * (n + 1) + cheat_index];
    voter_sum.add(u.voter);
    voter_squares.add(u.voter * u.voter);
    device_sum.add(u.device);
    device_squares.add(u.device * u.device);
    if (cast_round < cheat_round) {
      ++count_as_intended;
    } else if (cast_round == cheat_round) {
      ++count_cheated;
    } else {
      ++count_caught;
    }
  }

  SimResult result;
  result.trials = config.trials;
  const double n_trials = static_cast<double>(config.trials);
  result.mean_voter = voter_sum.sum / n_trials;
  result.mean_device = device_sum.sum / n_trials;
  result.stderr_voter = sample_stderr(voter_sum, voter_squares, config.trials);
  result.stderr_device = sample_stderr(device_sum, device_squares, config.trials);
  result.freq_cast_as_intended = static_cast<double>(count_as_intended) / n_trials;
  result.freq_cheated = static_cast<double>(count_cheated) / n_trials;
  result.freq_caught = static_cast<double>(count_caught) / n_trials;
  return result;
}

EquivalenceReport simulate_equivalence(const SimConfig& mixed_config,
                                       const SimConfig& behavioral_config) {
  const VoterMixedStrategy* mixed =
      std::get_if<VoterMixedStrategy>(&mixed_config.voter);
  const VoterBehavioralStrategy* behavioral =
      std::get_if<VoterBehavioralStrategy>(&behavioral_config.voter);
  if (mixed == nullptr) {
    throw std::invalid_argument("first config must hold a mixed voter strategy");
  }
  if (behavioral == nullptr) {
    throw std::invalid_argument(
        "second config must hold a behavioral voter strategy");
  }
  if (!(mixed_config.params == behavioral_config.params)) {
    throw std::invalid_argument("configs must share game parameters");
  }
  if (mixed_config.device.probs != behavioral_config.device.probs ||
      mixed_config.device.p_never != behavioral_config.device.p_never) {
    throw std::invalid_argument("configs must share the device strategy");
  }
  if (mixed_config.trials != behavioral_config.trials) {
    throw std::invalid_argument("configs must share the trial count");
  }
  const VoterBehavioralStrategy image = mixed_to_behavioral(*mixed);
  if (image.probs.size() != behavioral->probs.size()) {
    throw std::invalid_argument("voter strategy length must equal n_max");
  }
  for (std::size_t i = 0; i < image.probs.size(); ++i) {
    if (std::abs(image.probs[i] - behavioral->probs[i]) > kProbabilityTolerance) {
      throw std::invalid_argument(
          "behavioral strategy is not the image of the mixed strategy");
    }
  }

  EquivalenceReport report;
  report.mixed_run = simulate(mixed_config);
  report.behavioral_run = simulate(behavioral_config);
  const SimResult& a = report.mixed_run;
  const SimResult& b = report.behavioral_run;

  const auto margin = [](double gap, double se_a, double se_b) {
    return std::abs(gap) - 3.0 * std::sqrt(se_a * se_a + se_b * se_b);
  };

  const double voter_margin =
      margin(a.mean_voter - b.mean_voter, a.stderr_voter, b.stderr_voter);
  const double device_margin =
      margin(a.mean_device - b.mean_device, a.stderr_device, b.stderr_device);
  report.worst_payoff_margin = std::max(voter_margin, device_margin);
  report.payoffs_agree = report.worst_payoff_margin <= 0.0;

  report.worst_frequency_margin = -std::numeric_limits<double>::infinity();
  const double freqs_a[] = {a.freq_cast_as_intended, a.freq_cheated, a.freq_caught};
  const double freqs_b[] = {b.freq_cast_as_intended, b.freq_cheated, b.freq_caught};
  for (int i = 0; i < 3; ++i) {
    const double m = margin(freqs_a[i] - freqs_b[i],
                            binomial_stderr(freqs_a[i], a.trials),
                            binomial_stderr(freqs_b[i], b.trials));
    report.worst_frequency_margin = std::max(report.worst_frequency_margin, m);
  }
  report.frequencies_agree = report.worst_frequency_margin <= 0.0;
  return report;
}

}  // namespace benaloh
