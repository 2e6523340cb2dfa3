#include "benaloh/nash.hpp"
#include "benaloh/simulate.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

using Catch::Matchers::WithinAbs;

namespace {

// Simulation of the equilibrium profile for the given game.
benaloh::SimConfig nash_config(const benaloh::GameParams& params,
                               std::int64_t trials, std::uint64_t seed) {
  const benaloh::NashSolution solution = benaloh::nash_solution(params);
  benaloh::SimConfig config;
  config.params = params;
  config.voter = solution.voter_mixed;
  config.device = solution.device;
  config.trials = trials;
  config.seed = seed;
  return config;
}

bool identical(const benaloh::SimResult& a, const benaloh::SimResult& b) {
  return a.mean_voter == b.mean_voter && a.mean_device == b.mean_device &&
         a.stderr_voter == b.stderr_voter &&
         a.stderr_device == b.stderr_device &&
         a.freq_cast_as_intended == b.freq_cast_as_intended &&
         a.freq_cheated == b.freq_cheated && a.freq_caught == b.freq_caught &&
         a.trials == b.trials;
}

}  // namespace

TEST_CASE("repeat runs with one seed are bit-identical", "[simulate]") {
  benaloh::SimConfig config = nash_config(testsupport::two_round_game(), 50'000, 42);
  REQUIRE(identical(benaloh::simulate(config), benaloh::simulate(config)));

  config.voter = benaloh::nash_voter_behavioral(testsupport::two_round_game());
  REQUIRE(identical(benaloh::simulate(config), benaloh::simulate(config)));
}

TEST_CASE("different seeds give different samples", "[simulate]") {
  benaloh::SimConfig config = nash_config(testsupport::two_round_game(), 50'000, 42);
  const benaloh::SimResult a = benaloh::simulate(config);
  config.seed = 43;
  const benaloh::SimResult b = benaloh::simulate(config);
  REQUIRE(a.mean_voter != b.mean_voter);
  REQUIRE(a.mean_device != b.mean_device);
}

TEST_CASE("device mean is reconciled by the outcome frequencies", "[simulate]") {
  // The device's payoff is constant on each of the three outcome classes, so
  // its mean must be an exact linear function of the class frequencies.
  for (const benaloh::GameParams& params :
       {testsupport::two_round_game(), testsupport::five_round_game()}) {
    const benaloh::SimResult result =
        benaloh::simulate(nash_config(params, 200'000, 7));
    const double reconstructed =
        result.freq_cheated * params.device_success_reward -
        result.freq_caught * params.device_caught_penalty;
    REQUIRE_THAT(result.mean_device, WithinAbs(reconstructed, 1e-12));
    REQUIRE_THAT(result.freq_cast_as_intended + result.freq_cheated +
                     result.freq_caught,
                 WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("honest device never produces cheat outcomes", "[simulate]") {
  benaloh::SimConfig config;
  config.params = testsupport::two_round_game();
  config.voter = benaloh::VoterMixedStrategy{{0.5, 0.5}};
  config.device = benaloh::DeviceMixedStrategy{{0.0, 0.0}, 1.0};
  config.trials = 10'000;
  const benaloh::SimResult result = benaloh::simulate(config);
  REQUIRE(result.freq_cast_as_intended == 1.0);
  REQUIRE(result.freq_cheated == 0.0);
  REQUIRE(result.freq_caught == 0.0);
  REQUIRE(result.mean_device == 0.0);
}

TEST_CASE("deterministic play makes the sample a constant", "[simulate]") {
  // Voter always casts in round 2 against an honest device: payoff is
  // exactly asucc_V - c_audit every trial, so the variance is zero.
  benaloh::SimConfig config;
  config.params = testsupport::two_round_game();
  config.voter = benaloh::VoterMixedStrategy{{0.0, 1.0}};
  config.device = benaloh::DeviceMixedStrategy{{0.0, 0.0}, 1.0};
  config.trials = 1'000;
  const benaloh::SimResult result = benaloh::simulate(config);
  REQUIRE(result.mean_voter == 1.0);
  REQUIRE(result.stderr_voter == 0.0);
  REQUIRE(result.stderr_device == 0.0);
}

TEST_CASE("single-trial runs report zero standard error", "[simulate]") {
  benaloh::SimConfig config = nash_config(testsupport::two_round_game(), 1, 9);
  const benaloh::SimResult result = benaloh::simulate(config);
  REQUIRE(result.trials == 1);
  REQUIRE(result.stderr_voter == 0.0);
  REQUIRE(result.stderr_device == 0.0);
}

TEST_CASE("sample means track the analytic expectation", "[simulate]") {
  const benaloh::GameParams params = testsupport::two_round_game();
  const benaloh::NashSolution solution = benaloh::nash_solution(params);
  const benaloh::PayoffPair expected = benaloh::expected_payoffs(
      solution.voter_mixed, solution.device, params);

  // At each sample size, at least 95 of 100 seeded replications must land
  // within four standard errors of the analytic value on both coordinates.
  for (const std::int64_t trials : {std::int64_t{1'000}, std::int64_t{100'000},
                                    std::int64_t{10'000'000}}) {
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      benaloh::SimConfig config = nash_config(params, trials, seed);
      const benaloh::SimResult result = benaloh::simulate(config);
      const bool voter_ok = std::abs(result.mean_voter - expected.voter) <=
                            4.0 * result.stderr_voter;
      const bool device_ok = std::abs(result.mean_device - expected.device) <=
                             4.0 * result.stderr_device;
      if (voter_ok && device_ok) ++within;
    }
    INFO("trials = " << trials);
    REQUIRE(within >= 95);
  }
}

TEST_CASE("standard errors shrink like the square root of the sample",
          "[simulate]") {
  const benaloh::GameParams params = testsupport::two_round_game();
  const benaloh::SimResult small =
      benaloh::simulate(nash_config(params, 10'000, 3));
  const benaloh::SimResult large =
      benaloh::simulate(nash_config(params, 1'000'000, 3));
  const double ratio = small.stderr_voter / large.stderr_voter;
  REQUIRE_THAT(ratio, WithinAbs(10.0, 1.0));
  REQUIRE(large.stderr_voter > 1e-4);
  REQUIRE(large.stderr_voter < 1e-2);
}

TEST_CASE("mixed and behavioral forms of one strategy agree", "[simulate]") {
  const benaloh::GameParams params = testsupport::five_round_game();
  const benaloh::NashSolution solution = benaloh::nash_solution(params);

  benaloh::SimConfig mixed_config;
  mixed_config.params = params;
  mixed_config.voter = solution.voter_mixed;
  mixed_config.device = solution.device;
  mixed_config.trials = 200'000;
  mixed_config.seed = 7;

  benaloh::SimConfig behavioral_config = mixed_config;
  behavioral_config.voter = benaloh::mixed_to_behavioral(solution.voter_mixed);
  behavioral_config.seed = 8;

  const benaloh::EquivalenceReport report =
      benaloh::simulate_equivalence(mixed_config, behavioral_config);
  REQUIRE(report.payoffs_agree);
  REQUIRE(report.frequencies_agree);
  REQUIRE(report.worst_payoff_margin <= 0.0);
  REQUIRE(report.worst_frequency_margin <= 0.0);
}

TEST_CASE("a deterministic cast round coincides across forms", "[simulate]") {
  // With all voter mass on round 3 both forms cast at the same instant of
  // every trial, and the device stream is shared, so the runs are identical
  // bit for bit.
  const benaloh::GameParams params = testsupport::five_round_game();
  benaloh::SimConfig mixed_config;
  mixed_config.params = params;
  mixed_config.voter = benaloh::VoterMixedStrategy{{0.0, 0.0, 1.0, 0.0, 0.0}};
  mixed_config.device = benaloh::nash_device(params);
  mixed_config.trials = 20'000;
  mixed_config.seed = 11;

  benaloh::SimConfig behavioral_config = mixed_config;
  behavioral_config.voter = benaloh::mixed_to_behavioral(
      benaloh::VoterMixedStrategy{{0.0, 0.0, 1.0, 0.0, 0.0}});

  const benaloh::EquivalenceReport report =
      benaloh::simulate_equivalence(mixed_config, behavioral_config);
  REQUIRE(identical(report.mixed_run, report.behavioral_run));
}

TEST_CASE("equivalence runs reject mismatched configurations", "[simulate]") {
  const benaloh::GameParams params = testsupport::two_round_game();
  const benaloh::NashSolution solution = benaloh::nash_solution(params);

  benaloh::SimConfig mixed_config;
  mixed_config.params = params;
  mixed_config.voter = solution.voter_mixed;
  mixed_config.device = solution.device;
  mixed_config.trials = 1'000;

  benaloh::SimConfig behavioral_config = mixed_config;
  behavioral_config.voter = benaloh::mixed_to_behavioral(solution.voter_mixed);

  SECTION("swapped argument order") {
    REQUIRE_THROWS_AS(
        benaloh::simulate_equivalence(behavioral_config, mixed_config),
        std::invalid_argument);
  }
  SECTION("different game parameters") {
    behavioral_config.params.audit_cost = 0.5;
    REQUIRE_THROWS_AS(
        benaloh::simulate_equivalence(mixed_config, behavioral_config),
        std::invalid_argument);
  }
  SECTION("different device strategies") {
    behavioral_config.device = benaloh::DeviceMixedStrategy{{0.0, 0.0}, 1.0};
    REQUIRE_THROWS_AS(
        benaloh::simulate_equivalence(mixed_config, behavioral_config),
        std::invalid_argument);
  }
  SECTION("different trial counts") {
    behavioral_config.trials = 2'000;
    REQUIRE_THROWS_AS(
        benaloh::simulate_equivalence(mixed_config, behavioral_config),
        std::invalid_argument);
  }
  SECTION("behavioral strategy that is not the mixed image") {
    behavioral_config.voter = benaloh::VoterBehavioralStrategy{{0.3, 1.0}};
    REQUIRE_THROWS_AS(
        benaloh::simulate_equivalence(mixed_config, behavioral_config),
        std::invalid_argument);
  }
}

TEST_CASE("simulation rejects invalid runs", "[simulate]") {
  benaloh::SimConfig config = nash_config(testsupport::two_round_game(), 100, 1);

  SECTION("zero trials") {
    config.trials = 0;
    REQUIRE_THROWS_AS(benaloh::simulate(config), std::invalid_argument);
  }
  SECTION("device strategy of the wrong length") {
    config.device = benaloh::DeviceMixedStrategy{{0.5, 0.25, 0.25}, 0.0};
    REQUIRE_THROWS_AS(benaloh::simulate(config), std::invalid_argument);
  }
  SECTION("voter strategy of the wrong length") {
    config.voter = benaloh::VoterMixedStrategy{{1.0}};
    REQUIRE_THROWS_AS(benaloh::simulate(config), std::invalid_argument);
  }
  SECTION("behavioral strategy that cannot end the game") {
    config.voter = benaloh::VoterBehavioralStrategy{{0.5, 0.5}};
    REQUIRE_THROWS_AS(benaloh::simulate(config),
                      benaloh::residual_probability_error);
  }
  SECTION("parameters violating the standing assumptions") {
    config.params.audit_cost = config.params.voter_cheated_penalty;
    REQUIRE_THROWS_AS(benaloh::simulate(config), std::invalid_argument);
  }
}
