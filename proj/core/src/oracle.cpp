#include "benaloh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace benaloh {

namespace {

constexpr JointAction kCastHonest{VoterAction::cast, DeviceAction::honest};
constexpr JointAction kCastCheat{VoterAction::cast, DeviceAction::cheat};
constexpr JointAction kAuditHonest{VoterAction::audit, DeviceAction::honest};
constexpr JointAction kAuditCheat{VoterAction::audit, DeviceAction::cheat};

std::unique_ptr<GameTreeNode> make_leaf(int round, PayoffPair outcome) {
  auto leaf = std::make_unique<GameTreeNode>();
  leaf->round = round;
  leaf->terminal = true;
  leaf->outcome = outcome;
  return leaf;
}

std::unique_ptr<GameTreeNode> make_node(int round, const GameParams& params) {
  auto node = std::make_unique<GameTreeNode>();
  node->round = round;

  // Casting ends the game whatever the device does.
  node->children[kCastHonest] = make_leaf(round, payoff(round, kNeverCheats, params));
  node->children[kCastCheat] = make_leaf(round, payoff(round, round, params));
  if (round < params.max_rounds) {
    // Auditing a cheat ends it too; auditing an honest ballot moves on.
    node->children[kAuditCheat] = make_leaf(round, payoff(round + 1, round, params));
    node->children[kAuditHonest] = make_node(round + 1, params);
  }
  return node;
}

void require_two_rounds(const GameParams& params) {
  params.validate();
  if (params.max_rounds != 2) {
    throw unsupported_horizon_error(
        "grid oracles are only available for the two-round game");
  }
}

// Expected device payoff when the voter casts in round 1 with probability p
// and the device first cheats in round m (kNeverCheats for staying honest).
double device_value(double p, int cheat, const GameParams& params) {
  return p * payoff(1, cheat, params).device +
         (1.0 - p) * payoff(2, cheat, params).device;
}

double voter_value(double p, int cheat, const GameParams& params) {
  return p * payoff(1, cheat, params).voter +
         (1.0 - p) * payoff(2, cheat, params).voter;
}

}  // namespace

std::unique_ptr<GameTreeNode> build_game_tree(const GameParams& params) {
  params.validate();
  return make_node(1, params);
}

BackwardInductionReport backward_induction_probe(const GameTreeNode& root) {
  // Walk the (audit, honest) spine down to the deepest decision node.
  const GameTreeNode* node = &root;
  const GameTreeNode* parent = nullptr;
  while (node->children.count(kAuditHonest) > 0) {
    parent = node;
    node = node->children.at(kAuditHonest).get();
  }

  BackwardInductionReport report;

  // Last round: the voter casts for sure, so the device compares the two
  // leaf payoffs directly.  Cheating and honesty agree on every earlier
  // history, so a strict edge here is weak dominance in the full game.
  const double honest_last = node->children.at(kCastHonest)->outcome->device;
  const double cheat_last = node->children.at(kCastCheat)->outcome->device;
  report.last_round_honesty_dominated = cheat_last > honest_last;

  if (parent == nullptr) return report;  // one-round game

  // Second-to-last round, with the device's last-round cheat folded in as
  // the continuation of (audit, honest).  Rows: voter cast/audit; columns:
  // device honest/cheat.
  const GameTreeNode& last = *node;
  const PayoffPair continuation = *last.children.at(kCastCheat)->outcome;
  const PayoffPair cast_honest = *parent->children.at(kCastHonest)->outcome;
  const PayoffPair cast_cheat = *parent->children.at(kCastCheat)->outcome;
  const PayoffPair audit_cheat = *parent->children.at(kAuditCheat)->outcome;
  const PayoffPair audit_honest = continuation;

  const bool voter_cast_dominates = cast_honest.voter > audit_honest.voter &&
                                    cast_cheat.voter > audit_cheat.voter;
  const bool voter_audit_dominates = audit_honest.voter > cast_honest.voter &&
                                     audit_cheat.voter > cast_cheat.voter;
  const bool device_honest_dominates = cast_honest.device > cast_cheat.device &&
                                       audit_honest.device > audit_cheat.device;
  const bool device_cheat_dominates = cast_cheat.device > cast_honest.device &&
                                      audit_cheat.device > audit_honest.device;
  report.second_to_last_eliminable = voter_cast_dominates ||
                                     voter_audit_dominates ||
                                     device_honest_dominates ||
                                     device_cheat_dominates;
  return report;
}

SweepResult grid_sweep_sval(const GameParams& params, int grid_n) {
  require_two_rounds(params);
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");

  const int options[] = {1, 2, kNeverCheats};
  SweepResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid_n; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(grid_n);

    // Device best responses by direct comparison; ties resolved against
    // the voter.
    double best_device = -std::numeric_limits<double>::infinity();
    for (int m : options) best_device = std::max(best_device, device_value(p, m, params));
    double value = std::numeric_limits<double>::infinity();
    for (int m : options) {
      if (device_value(p, m, params) == best_device) {
        value = std::min(value, voter_value(p, m, params));
      }
    }

    if (value > result.best_value) {
      result.best_value = value;
      result.best_cast_probability = p;
    }
  }
  return result;
}

std::vector<double> brute_force_device_br(double cast_probability,
                                          const GameParams& params,
                                          int grid_n, double flat_tol) {
  require_two_rounds(params);
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  if (!(cast_probability >= 0.0 && cast_probability <= 1.0)) {
    throw std::invalid_argument("cast probability must lie in [0, 1]");
  }
  if (!(flat_tol >= 0.0)) throw std::invalid_argument("flat_tol must be >= 0");

  // E[u_D] over the 2x2 outcome table, with the device cheating first in
  // round 1 with weight q and in round 2 otherwise.
  const auto device_payoff = [&](double q) {
    double value = 0.0;
    const double voter_weights[] = {cast_probability, 1.0 - cast_probability};
    const double device_weights[] = {q, 1.0 - q};
    for (int cast = 1; cast <= 2; ++cast) {
      for (int cheat = 1; cheat <= 2; ++cheat) {
        value += voter_weights[cast - 1] * device_weights[cheat - 1] *
                 payoff(cast, cheat, params).device;
      }
    }
    return value;
  };

  std::vector<double> values(static_cast<std::size_t>(grid_n) + 1);
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= grid_n; ++j) {
    const double q = static_cast<double>(j) / static_cast<double>(grid_n);
    values[static_cast<std::size_t>(j)] = device_payoff(q);
    best = std::max(best, values[static_cast<std::size_t>(j)]);
  }

  std::vector<double> argmax;
  for (int j = 0; j <= grid_n; ++j) {
    if (best - values[static_cast<std::size_t>(j)] <= flat_tol) {
      argmax.push_back(static_cast<double>(j) / static_cast<double>(grid_n));
    }
  }
  return argmax;
}

PureProfileScan pure_profile_deviation_scan(const GameParams& params) {
  params.validate();
  const int n = params.max_rounds;

  std::vector<int> device_options;
  for (int m = 1; m <= n; ++m) device_options.push_back(m);
  device_options.push_back(kNeverCheats);

  PureProfileScan scan;
  for (int cast = 1; cast <= n; ++cast) {
    for (int cheat : device_options) {
      const PayoffPair here = payoff(cast, cheat, params);
      bool voter_can_improve = false;
      for (int other = 1; other <= n && !voter_can_improve; ++other) {
        voter_can_improve = payoff(other, cheat, params).voter > here.voter;
      }
      bool device_can_improve = false;
      for (int other : device_options) {
        if (payoff(cast, other, params).device > here.device) {
          device_can_improve = true;
          break;
        }
      }
      if (!voter_can_improve && !device_can_improve) {
        scan.any_stable = true;
        if (!scan.stable_profile) scan.stable_profile = {cast, cheat};
      }
    }
  }
  return scan;
}

}  // namespace benaloh
