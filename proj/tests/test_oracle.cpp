// Unit tests for the exhaustive cross-check oracles: game tree, dominance
// probe, grid sweeps, and the pure-profile scan.

#include "benaloh/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "benaloh/nash.hpp"
#include "benaloh/stackelberg.hpp"

#include "test_support.hpp"

#include <random>

using benaloh::DeviceAction;
using benaloh::GameParams;
using benaloh::GameTreeNode;
using benaloh::JointAction;
using benaloh::VoterAction;
using Catch::Matchers::WithinAbs;

namespace {

constexpr JointAction kCastHonest{VoterAction::cast, DeviceAction::honest};
constexpr JointAction kCastCheat{VoterAction::cast, DeviceAction::cheat};
constexpr JointAction kAuditHonest{VoterAction::audit, DeviceAction::honest};
constexpr JointAction kAuditCheat{VoterAction::audit, DeviceAction::cheat};

int count_leaves(const GameTreeNode& node) {
  if (node.terminal) return 1;
  int total = 0;
  for (const auto& entry : node.children) total += count_leaves(*entry.second);
  return total;
}

}  // namespace

TEST_CASE("game tree has one continuation branch per interior round",
          "[oracle]") {
  const GameParams params = testsupport::make_params(2.0, 3.0, 1.0, 4.0, 1.0, 3);
  const auto root = benaloh::build_game_tree(params);

  REQUIRE(root->round == 1);
  REQUIRE_FALSE(root->terminal);
  REQUIRE(root->children.size() == 4);

  const GameTreeNode& second = *root->children.at(kAuditHonest);
  REQUIRE(second.round == 2);
  REQUIRE(second.children.size() == 4);

  // Final round: the voter must cast, so only the device branches.
  const GameTreeNode& last = *second.children.at(kAuditHonest);
  REQUIRE(last.round == 3);
  REQUIRE(last.children.size() == 2);
  REQUIRE(last.children.at(kCastHonest)->terminal);
  REQUIRE(last.children.at(kCastCheat)->terminal);

  // Interior rounds contribute three leaves each, the last round two.
  REQUIRE(count_leaves(*root) == 3 * (3 - 1) + 2);
}

TEST_CASE("one-round tree is a single forced decision", "[oracle]") {
  const GameParams params = testsupport::make_params(2.0, 3.0, 1.0, 4.0, 1.0, 1);
  const auto root = benaloh::build_game_tree(params);
  REQUIRE(root->children.size() == 2);
  REQUIRE(count_leaves(*root) == 2);
  REQUIRE(root->children.at(kCastCheat)->outcome->voter == -3.0);
  REQUIRE(root->children.at(kCastHonest)->outcome->voter == 2.0);
}

TEST_CASE("tree leaves reproduce the payoff table at every depth", "[oracle]") {
  for (int rounds = 1; rounds <= 8; ++rounds) {
    const GameParams params =
        testsupport::make_params(2.0, 3.0, 1.0, 4.0, 1.0, rounds);
    const auto root = benaloh::build_game_tree(params);

    const GameTreeNode* node = root.get();
    for (int depth = 1; depth <= rounds; ++depth) {
      INFO("rounds = " << rounds << ", depth = " << depth);
      // Casting against an honest device: success after depth-1 audits.
      REQUIRE(*node->children.at(kCastHonest)->outcome ==
              benaloh::payoff(depth, benaloh::kNeverCheats, params));
      // Casting into a cheat: the manipulated ballot counts.
      REQUIRE(*node->children.at(kCastCheat)->outcome ==
              benaloh::payoff(depth, depth, params));
      if (depth < rounds) {
        // Auditing a cheat: caught, regardless of when the voter would
        // have cast later.
        REQUIRE(*node->children.at(kAuditCheat)->outcome ==
                benaloh::payoff(depth + 1, depth, params));
        node = node->children.at(kAuditHonest).get();
      }
    }
  }
}

TEST_CASE("dominance probe: last round falls, the round before stalls",
          "[oracle]") {
  for (int rounds = 2; rounds <= 8; ++rounds) {
    const GameParams params =
        testsupport::make_params(2.0, 3.0, 1.0, 4.0, 1.0, rounds);
    const auto root = benaloh::build_game_tree(params);
    const benaloh::BackwardInductionReport report =
        benaloh::backward_induction_probe(*root);
    INFO("rounds = " << rounds);
    REQUIRE(report.last_round_honesty_dominated);
    REQUIRE(report.second_to_last_eliminable.has_value());
    REQUIRE_FALSE(report.second_to_last_eliminable.value());
  }

  const auto tiny = benaloh::build_game_tree(
      testsupport::make_params(2.0, 3.0, 1.0, 4.0, 1.0, 1));
  const benaloh::BackwardInductionReport report =
      benaloh::backward_induction_probe(*tiny);
  REQUIRE(report.last_round_honesty_dominated);
  REQUIRE_FALSE(report.second_to_last_eliminable.has_value());
}

TEST_CASE("dominance stall holds across random parameter draws", "[oracle]") {
  std::mt19937_64 rng(321321);
  for (int draw = 0; draw < 100; ++draw) {
    const GameParams params = testsupport::random_params(rng, 2, 6);
    const auto root = benaloh::build_game_tree(params);
    const benaloh::BackwardInductionReport report =
        benaloh::backward_induction_probe(*root);
    REQUIRE(report.last_round_honesty_dominated);
    REQUIRE_FALSE(report.second_to_last_eliminable.value());
  }
}

TEST_CASE("coarse sweep picks the best grid point", "[oracle]") {
  // Grid {0, 1/2, 1}: the device cheats late against 0 and 1/2, immediately
  // against 1, giving voter values -4, -1, -3.
  const benaloh::SweepResult sweep =
      benaloh::grid_sweep_sval(testsupport::two_round_game(), 2);
  REQUIRE(sweep.best_value == -1.0);
  REQUIRE(sweep.best_cast_probability == 0.5);
}

TEST_CASE("sweep ties at the threshold resolve against the voter", "[oracle]") {
  // grid_n = 6 puts 5/6 itself on the grid; the best point is 4/6, because
  // at 5/6 the tie sends the voter to the dropped branch.
  const benaloh::SweepResult sweep =
      benaloh::grid_sweep_sval(testsupport::two_round_game(), 6);
  REQUIRE_THAT(sweep.best_cast_probability, WithinAbs(4.0 / 6.0, 1e-15));
  REQUIRE_THAT(sweep.best_value, WithinAbs(0.0, 1e-15));
}

TEST_CASE("fine sweeps approach the commitment value from below", "[oracle]") {
  const GameParams params = testsupport::two_round_game();
  const double sval = benaloh::stackelberg_value(params);
  const double slope = params.voter_success_reward +
                       params.voter_cheated_penalty + params.audit_cost;

  double previous_deficit = std::numeric_limits<double>::infinity();
  for (int grid : {100, 1000, 10000, 100000}) {
    const benaloh::SweepResult sweep = benaloh::grid_sweep_sval(params, grid);
    const double deficit = sval - sweep.best_value;
    INFO("grid = " << grid);
    REQUIRE(deficit > 0.0);
    REQUIRE(deficit <= slope / grid + 1e-12);
    REQUIRE(deficit <= previous_deficit);
    previous_deficit = deficit;
  }
}

TEST_CASE("sweep validates its inputs", "[oracle]") {
  REQUIRE_THROWS_AS(benaloh::grid_sweep_sval(testsupport::five_round_game(), 100),
                    benaloh::unsupported_horizon_error);
  REQUIRE_THROWS_AS(benaloh::grid_sweep_sval(testsupport::two_round_game(), 1),
                    std::invalid_argument);
}

TEST_CASE("exhaustive device search matches the closed-form best response",
          "[oracle]") {
  const GameParams params = testsupport::two_round_game();
  const double threshold = benaloh::nash_cast_probability(params);

  // Below the threshold the device's payoff strictly decreases in its
  // immediate-cheat weight; above, it strictly increases.
  REQUIRE(benaloh::brute_force_device_br(0.2, params, 1000) ==
          (std::vector<double>{0.0}));
  REQUIRE(benaloh::brute_force_device_br(0.95, params, 1000) ==
          (std::vector<double>{1.0}));
  // At the threshold the payoff is flat: every grid point qualifies.
  REQUIRE(benaloh::brute_force_device_br(threshold, params, 1000).size() ==
          1001);

  std::mt19937_64 rng(20240818);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int draw = 0; draw < 1000; ++draw) {
    const double p = unit(rng);
    const std::vector<double> argmax =
        benaloh::brute_force_device_br(p, params, 200);
    const benaloh::BestResponseSet closed =
        benaloh::best_response_device(p, params);
    REQUIRE_FALSE(argmax.empty());
    switch (closed.kind) {
      case benaloh::BestResponseKind::only_honest_first:
        REQUIRE(argmax.front() == 0.0);
        break;
      case benaloh::BestResponseKind::only_cheat_first:
        REQUIRE(argmax.back() == 1.0);
        break;
      case benaloh::BestResponseKind::full_interval:
        REQUIRE(argmax.size() == 201);
        break;
    }
  }

  REQUIRE_THROWS_AS(benaloh::brute_force_device_br(0.5, params, 1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(benaloh::brute_force_device_br(1.5, params, 100),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      benaloh::brute_force_device_br(0.5, testsupport::five_round_game(), 100),
      benaloh::unsupported_horizon_error);
}

TEST_CASE("no pure profile survives the deviation scan beyond one round",
          "[oracle]") {
  for (int rounds = 2; rounds <= 8; ++rounds) {
    const GameParams params =
        testsupport::make_params(2.0, 3.0, 1.0, 4.0, 1.0, rounds);
    const benaloh::PureProfileScan scan =
        benaloh::pure_profile_deviation_scan(params);
    INFO("rounds = " << rounds);
    REQUIRE_FALSE(scan.any_stable);
    REQUIRE_FALSE(scan.stable_profile.has_value());
  }

  std::mt19937_64 rng(555000111);
  for (int draw = 0; draw < 200; ++draw) {
    const GameParams params = testsupport::random_params(rng, 2, 6);
    REQUIRE_FALSE(benaloh::pure_profile_deviation_scan(params).any_stable);
  }
}

TEST_CASE("the forced one-round profile is the lone stable exception",
          "[oracle]") {
  const GameParams params = testsupport::make_params(2.0, 3.0, 1.0, 4.0, 1.0, 1);
  const benaloh::PureProfileScan scan =
      benaloh::pure_profile_deviation_scan(params);
  REQUIRE(scan.any_stable);
  REQUIRE(scan.stable_profile == (std::pair<int, int>{1, 1}));
}

TEST_CASE("grid sweeps lower-bound the commitment value on random games",
          "[oracle]") {
  // The sweep maximum can trail the supremum by at most one grid step of
  // the rising branch, and must never exceed it.
  std::mt19937_64 rng(424242);
  for (int draw = 0; draw < 1000; ++draw) {
    const GameParams params = testsupport::random_params(rng, 2, 2);
    const double sval = benaloh::stackelberg_value(params);
    const double slope = params.voter_success_reward +
                         params.voter_cheated_penalty + params.audit_cost;
    const benaloh::SweepResult sweep = benaloh::grid_sweep_sval(params, 500);
    const double gap = sval - sweep.best_value;
    INFO("draw = " << draw << " gap = " << gap);
    REQUIRE(gap >= -1e-12);
    REQUIRE(gap <= slope / 500.0 + 1e-9);
  }
}
