#pragma once

#include "benaloh/game.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

// Slow-but-obvious cross-checks for the closed-form solvers: an explicit
// game tree, exhaustive grid searches, and pure-profile deviation scans.
// Nothing here shares code with the solvers it is meant to check.

namespace benaloh {

enum class VoterAction { cast, audit };
enum class DeviceAction { honest, cheat };

struct JointAction {
  VoterAction voter = VoterAction::cast;
  DeviceAction device = DeviceAction::honest;

  auto operator<=>(const JointAction&) const = default;
};

// Extensive-form node.  Interior nodes own one child per joint action; the
// game continues only through (audit, honest), every other pair ends it.
// Terminal nodes carry the outcome payoffs instead.
struct GameTreeNode {
  int round = 1;
  bool terminal = false;
  std::optional<PayoffPair> outcome;
  std::map<JointAction, std::unique_ptr<GameTreeNode>> children;
};

// Builds the full tree.  At the final round the voter must cast, so the
// deepest interior node only branches on the device's action.
std::unique_ptr<GameTreeNode> build_game_tree(const GameParams& params);

// What one-step dominance reasoning can and cannot conclude on the tree.
struct BackwardInductionReport {
  // Cheating weakly dominates honesty for the device in the last round.
  bool last_round_honesty_dominated = false;
  // Whether any action can be eliminated by strict dominance at the
  // second-to-last round (empty for one-round games).  Dominance solving
  // stalls here, which is why the game needs mixed equilibria.
  std::optional<bool> second_to_last_eliminable;
};

BackwardInductionReport backward_induction_probe(const GameTreeNode& root);

// Exhaustive search over voter commitments on a uniform grid with grid_n
// segments, recording the best grid value of the payoff against
// best-responding devices.  Two-round games only; grid_n >= 2.
struct SweepResult {
  double best_value = 0.0;
  double best_cast_probability = 0.0;
};

SweepResult grid_sweep_sval(const GameParams& params, int grid_n);

// Grid search over the device's round-1 cheat weight against a committed
// voter cast probability, evaluating the device's bilinear expected payoff
// directly.  Returns every grid point within flat_tol of the maximum.
// Two-round games only.
std::vector<double> brute_force_device_br(double cast_probability,
                                          const GameParams& params,
                                          int grid_n,
                                          double flat_tol = 1e-12);

// Scans every pure strategy profile for a profitable unilateral deviation.
struct PureProfileScan {
  bool any_stable = false;
  // First stable profile found, as (cast round, cheat round) with
  // kNeverCheats standing for the always-honest device.
  std::optional<std::pair<int, int>> stable_profile;
};

PureProfileScan pure_profile_deviation_scan(const GameParams& params);

}  // namespace benaloh
