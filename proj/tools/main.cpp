// Command-line front end for the inspection-game solver library.
//
//   benaloh nash        --example culnane-teague
//   benaloh stackelberg --config game.json --epsilon 0.01
//   benaloh simulate    --config game.json --seed 7
//   benaloh sweep       --example culnane-teague --grid 200 --out sweep.csv
//   benaloh verify      --config game.json
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 I/O failure.

#include "benaloh/game.hpp"
#include "benaloh/nash.hpp"
#include "benaloh/oracle.hpp"
#include "benaloh/serialization.hpp"
#include "benaloh/simulate.hpp"
#include "benaloh/stackelberg.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoFailure = 3;

// Raised for unreadable or unwritable files, as opposed to files whose
// contents fail to parse or validate.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a run can be configured with from a JSON file.  Strategies are
// optional; commands fall back to the Nash profile when they are absent.
struct RunConfig {
  benaloh::GameParams params;
  std::optional<benaloh::VoterMixedStrategy> voter_mixed;
  std::optional<benaloh::VoterBehavioralStrategy> voter_behavioral;
  std::optional<benaloh::DeviceMixedStrategy> device;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  int grid_n = 1000;
};

// Command-line flags shared by every subcommand.
struct GlobalFlags {
  std::string config_path;
  std::string example_name;
  std::string out_path;
  bool json_output = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int grid = 0;
  bool grid_given = false;
  double epsilon = 0.01;
};

void reject_unknown_keys(const json& j, const char* what,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(std::string(what) + " has unknown key \"" +
                                  item.key() + "\"");
    }
  }
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  reject_unknown_keys(j, "config",
                      {"params", "voter_mixed", "voter_behavioral", "device",
                       "sim", "sweep"});
  if (!j.contains("params")) {
    throw std::invalid_argument("config is missing key \"params\"");
  }

  RunConfig config;
  config.params = j.at("params").get<benaloh::GameParams>();
  config.params.validate();
  const std::size_t n = static_cast<std::size_t>(config.params.max_rounds);

  if (j.contains("voter_mixed")) {
    config.voter_mixed = j.at("voter_mixed").get<benaloh::VoterMixedStrategy>();
    config.voter_mixed->validate();
    if (config.voter_mixed->probs.size() != n) {
      throw std::invalid_argument("voter_mixed length must equal n_max");
    }
  }
  if (j.contains("voter_behavioral")) {
    config.voter_behavioral =
        j.at("voter_behavioral").get<benaloh::VoterBehavioralStrategy>();
    config.voter_behavioral->validate();
    if (config.voter_behavioral->probs.size() != n) {
      throw std::invalid_argument("voter_behavioral length must equal n_max");
    }
  }
  if (j.contains("device")) {
    config.device = j.at("device").get<benaloh::DeviceMixedStrategy>();
    config.device->validate();
    if (config.device->probs.size() != n) {
      throw std::invalid_argument("device strategy length must equal n_max");
    }
  }
  if (j.contains("sim")) {
    const json& sim = j.at("sim");
    reject_unknown_keys(sim, "sim", {"trials", "seed"});
    if (sim.contains("trials")) {
      if (!sim.at("trials").is_number_integer()) {
        throw std::invalid_argument("sim.trials must be an integer");
      }
      config.trials = sim.at("trials").get<std::int64_t>();
      if (config.trials < 1) {
        throw std::invalid_argument("sim.trials must be >= 1");
      }
    }
    if (sim.contains("seed")) {
      if (!sim.at("seed").is_number_integer()) {
        throw std::invalid_argument("sim.seed must be an integer");
      }
      config.seed = sim.at("seed").get<std::uint64_t>();
    }
  }
  if (j.contains("sweep")) {
    const json& sweep = j.at("sweep");
    reject_unknown_keys(sweep, "sweep", {"grid_n"});
    if (sweep.contains("grid_n")) {
      if (!sweep.at("grid_n").is_number_integer()) {
        throw std::invalid_argument("sweep.grid_n must be an integer");
      }
      config.grid_n = sweep.at("grid_n").get<int>();
      if (config.grid_n < 2) {
        throw std::invalid_argument("sweep.grid_n must be >= 2");
      }
    }
  }
  return config;
}

// The worked numerical example used throughout: asucc_V=2, afail_V=3,
// asucc_D=1, afail_D=4, c_audit=1, two rounds.
benaloh::GameParams example_params(const std::string& name) {
  if (name != "culnane-teague") {
    throw std::invalid_argument("unknown example \"" + name +
                                "\" (available: culnane-teague)");
  }
  benaloh::GameParams params;
  params.voter_success_reward = 2.0;
  params.voter_cheated_penalty = 3.0;
  params.device_success_reward = 1.0;
  params.device_caught_penalty = 4.0;
  params.audit_cost = 1.0;
  params.max_rounds = 2;
  return params;
}

RunConfig load_run_config(const GlobalFlags& flags) {
  if (!flags.example_name.empty()) {
    RunConfig config;
    config.params = example_params(flags.example_name);
    return config;
  }
  if (flags.config_path.empty()) {
    throw std::invalid_argument(
        "a game configuration is required (--config FILE or --example NAME)");
  }
  std::ifstream in(flags.config_path);
  if (!in) {
    throw io_error("cannot open config file: " + flags.config_path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  return parse_run_config(j);
}

// Primary output goes to --out when given, otherwise to stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw io_error("cannot open output file: " + path);
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) {
      throw io_error("failed while writing output file");
    }
  }

 private:
  std::ofstream file_;
};

std::string fixed6(double x) {
  std::ostringstream oss;
  oss << std::fixed << std::setprecision(6) << x;
  return oss.str();
}

std::string fixed6(const std::vector<double>& xs) {
  std::string text = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) text += ", ";
    text += fixed6(xs[i]);
  }
  return text + "]";
}

// Shortest decimal form that parses back to the same double; used for CSV
// so downstream tools see full precision.
std::string shortest(double x) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

int cmd_nash(const GlobalFlags& flags) {
  const RunConfig config = load_run_config(flags);
  const benaloh::NashSolution solution = benaloh::nash_solution(config.params);

  OutputTarget target(flags.out_path);
  std::ostream& out = target.stream();
  if (flags.json_output) {
    out << json(solution).dump(2) << "\n";
  } else {
    out << "Nash equilibrium (n_max = " << config.params.max_rounds << ")\n"
        << "  R    = " << fixed6(solution.odds_ratio) << "\n"
        << "  s_V  = " << fixed6(solution.voter_mixed.probs) << "\n"
        << "  b_V  = " << fixed6(solution.voter_behavioral.probs) << "\n"
        << "  s_D  = " << fixed6(solution.device.probs)
        << ", p_never = " << fixed6(solution.device.p_never) << "\n"
        << "  Eu_V = " << fixed6(solution.payoffs.voter) << "\n"
        << "  Eu_D = " << fixed6(solution.payoffs.device) << "\n";
  }
  target.finish();
  return kExitSuccess;
}

int cmd_stackelberg(const GlobalFlags& flags) {
  const RunConfig config = load_run_config(flags);
  if (!(flags.epsilon > 0.0)) {
    throw std::invalid_argument("--epsilon must be > 0");
  }
  const benaloh::StackelbergReport report =
      benaloh::compare_nash_stackelberg(config.params, flags.epsilon);

  OutputTarget target(flags.out_path);
  std::ostream& out = target.stream();
  if (flags.json_output) {
    out << json(report).dump(2) << "\n";
  } else {
    out << "Stackelberg commitment analysis (n_max = 2)\n"
        << "  SVal      = " << fixed6(report.sval)
        << "  (supremum; approached, never attained)\n"
        << "  p_V_NE    = " << fixed6(report.nash_cast_probability) << "\n"
        << "  nash_Eu_V = " << fixed6(report.nash_voter_payoff) << "\n"
        << "  epsilon   = " << fixed6(report.epsilon) << "\n"
        << "  p_V_eps   = " << fixed6(report.epsilon_cast_probability) << "\n"
        << "  Eu_V_eps  = " << fixed6(report.epsilon_guaranteed) << "\n";
  }
  target.finish();
  return kExitSuccess;
}

int cmd_simulate(const GlobalFlags& flags) {
  const RunConfig config = load_run_config(flags);

  benaloh::SimConfig sim;
  sim.params = config.params;
  if (config.voter_mixed) {
    sim.voter = *config.voter_mixed;
  } else if (config.voter_behavioral) {
    sim.voter = *config.voter_behavioral;
  } else {
    sim.voter = benaloh::nash_voter_mixed(config.params);
  }
  sim.device = config.device ? *config.device
                             : benaloh::nash_device(config.params);
  sim.trials = config.trials;
  sim.seed = flags.seed_given ? flags.seed : config.seed;

  const benaloh::SimResult result = benaloh::simulate(sim);

  OutputTarget target(flags.out_path);
  target.stream() << json(result).dump(2) << "\n";
  target.finish();
  return kExitSuccess;
}

int cmd_sweep(const GlobalFlags& flags) {
  const RunConfig config = load_run_config(flags);
  const int grid = flags.grid_given ? flags.grid : config.grid_n;
  if (grid < 2) throw std::invalid_argument("--grid must be >= 2");

  // Column values that are constant across the sweep.
  const double sval = benaloh::stackelberg_value(config.params);
  const double nash_eu =
      benaloh::nash_solution(config.params).payoffs.voter;

  OutputTarget target(flags.out_path);
  std::ostream& out = target.stream();
  out << "p_V,eu_vs_br,nash_eu_V,sval\n";
  for (int i = 0; i <= grid; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(grid);
    const double value = benaloh::utility_vs_best_response(p, config.params);
    out << shortest(p) << ',' << shortest(value) << ',' << shortest(nash_eu)
        << ',' << shortest(sval) << "\n";
  }
  target.finish();
  return kExitSuccess;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

int cmd_verify(const GlobalFlags& flags) {
  const RunConfig config = load_run_config(flags);
  const benaloh::GameParams& params = config.params;
  std::vector<Check> checks;

  // 1. The profile under test is a mutual best response.  User-supplied
  // strategies take precedence; otherwise the computed Nash profile.
  const benaloh::NashSolution solution = benaloh::nash_solution(params);
  const benaloh::VoterMixedStrategy& voter =
      config.voter_mixed ? *config.voter_mixed : solution.voter_mixed;
  const benaloh::DeviceMixedStrategy& device =
      config.device ? *config.device : solution.device;
  const benaloh::EquilibriumReport eq =
      benaloh::verify_equilibrium(voter, device, params, 1e-9);
  {
    std::ostringstream detail;
    detail << "max deviation gain " << std::scientific << std::setprecision(2)
           << std::max(eq.voter_gain, eq.device_gain) << " (tol 1e-09)";
    checks.push_back({"equilibrium", eq.is_equilibrium, detail.str()});
  }

  // 2. The two voter representations are images of one another.
  {
    const benaloh::VoterBehavioralStrategy image =
        benaloh::mixed_to_behavioral(solution.voter_mixed);
    double gap = 0.0;
    for (std::size_t i = 0; i < image.probs.size(); ++i) {
      gap = std::max(gap, std::abs(image.probs[i] -
                                   solution.voter_behavioral.probs[i]));
    }
    std::ostringstream detail;
    detail << "representation gap " << std::scientific << std::setprecision(2)
           << gap << " (tol 1e-09)";
    checks.push_back({"kuhn-image", gap <= 1e-9, detail.str()});
  }

  // 3. One-step dominance reasoning: the device's last-round honesty is
  // dominated, and elimination stalls one round earlier.
  {
    const auto tree = benaloh::build_game_tree(params);
    const benaloh::BackwardInductionReport probe =
        benaloh::backward_induction_probe(*tree);
    const bool expected_stall = params.max_rounds == 1 ||
                                !probe.second_to_last_eliminable.value();
    const bool passed = probe.last_round_honesty_dominated && expected_stall;
    checks.push_back({"dominance-probe", passed,
                      params.max_rounds == 1
                          ? "last round dominated; no earlier round to check"
                          : "last round dominated; elimination stalls earlier"});
  }

  // 4. No pure profile is stable (except in the forced one-round game).
  {
    const benaloh::PureProfileScan scan =
        benaloh::pure_profile_deviation_scan(params);
    const bool expect_stable = params.max_rounds == 1;
    checks.push_back({"no-pure-equilibrium", scan.any_stable == expect_stable,
                      expect_stable
                          ? "one-round game: the forced profile is stable"
                          : "every pure profile admits a profitable deviation"});
  }

  // 5/6. Two-round commitment analysis against exhaustive grids.
  if (params.max_rounds == 2) {
    const int grid = flags.grid_given ? flags.grid : 100000;
    if (grid < 2) throw std::invalid_argument("--grid must be >= 2");
    const double sval = benaloh::stackelberg_value(params);
    const double slope = params.voter_success_reward +
                         params.voter_cheated_penalty + params.audit_cost;
    const benaloh::SweepResult sweep = benaloh::grid_sweep_sval(params, grid);
    const double deficit = sval - sweep.best_value;
    {
      const bool passed =
          deficit > 0.0 && deficit <= slope / static_cast<double>(grid) + 1e-9;
      std::ostringstream detail;
      detail << "grid max " << std::setprecision(17) << sweep.best_value
             << " sits " << std::scientific << std::setprecision(2) << deficit
             << " below the supremum";
      checks.push_back({"sweep-approaches-sval", passed, detail.str()});
    }
    {
      const double threshold = benaloh::nash_cast_probability(params);
      const double probes[] = {0.0, threshold / 2.0, threshold,
                               (1.0 + threshold) / 2.0, 1.0};
      bool passed = true;
      for (double p : probes) {
        const std::vector<double> argmax =
            benaloh::brute_force_device_br(p, params, 1000);
        const benaloh::BestResponseSet response =
            benaloh::best_response_device(p, params);
        bool consistent = false;
        switch (response.kind) {
          case benaloh::BestResponseKind::only_honest_first:
            consistent = argmax.size() == 1 && argmax.front() == 0.0;
            break;
          case benaloh::BestResponseKind::only_cheat_first:
            consistent = argmax.size() == 1 && argmax.back() == 1.0;
            break;
          case benaloh::BestResponseKind::full_interval:
            consistent = argmax.size() == 1001;
            break;
        }
        passed = passed && consistent;
      }
      checks.push_back({"best-response-grid", passed,
                        "closed-form responses match exhaustive search"});
    }
  }

  bool all_passed = true;
  for (const Check& check : checks) all_passed = all_passed && check.passed;

  OutputTarget target(flags.out_path);
  std::ostream& out = target.stream();
  if (flags.json_output) {
    json j;
    j["all_passed"] = all_passed;
    j["checks"] = json::array();
    for (const Check& check : checks) {
      j["checks"].push_back({{"name", check.name},
                             {"passed", check.passed},
                             {"detail", check.detail}});
    }
    out << j.dump(2) << "\n";
  } else {
    for (const Check& check : checks) {
      out << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": "
          << check.detail << "\n";
    }
    out << (all_passed ? "all checks passed" : "some checks FAILED") << "\n";
  }
  target.finish();
  return all_passed ? kExitSuccess : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inspection-game solver for the Benaloh challenge"};
  app.require_subcommand(1);

  GlobalFlags flags;
  auto* config_opt = app.add_option(
      "--config", flags.config_path, "JSON run configuration file");
  auto* example_opt = app.add_option(
      "--example", flags.example_name,
      "named parameter preset (culnane-teague)");
  config_opt->excludes(example_opt);
  example_opt->excludes(config_opt);
  app.add_flag("--json", flags.json_output, "emit JSON instead of tables");
  auto* seed_opt =
      app.add_option("--seed", flags.seed, "override the simulation seed");
  auto* grid_opt = app.add_option("--grid", flags.grid,
                                  "grid resolution for sweeps and checks");
  app.add_option("--epsilon", flags.epsilon,
                 "suboptimality allowance for commitment strategies");
  app.add_option("--out", flags.out_path, "write output to this file");

  auto* nash_cmd =
      app.add_subcommand("nash", "solve for the mixed Nash equilibrium");
  auto* stackelberg_cmd = app.add_subcommand(
      "stackelberg", "commitment value and epsilon-optimal commitments");
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo run of a strategy profile");
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "CSV of commitment payoffs across cast probabilities");
  auto* verify_cmd = app.add_subcommand(
      "verify", "cross-check solver output against exhaustive oracles");
  for (CLI::App* sub :
       {nash_cmd, stackelberg_cmd, simulate_cmd, sweep_cmd, verify_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  flags.seed_given = seed_opt->count() > 0;
  flags.grid_given = grid_opt->count() > 0;

  try {
    if (*nash_cmd) return cmd_nash(flags);
    if (*stackelberg_cmd) return cmd_stackelberg(flags);
    if (*simulate_cmd) return cmd_simulate(flags);
    if (*sweep_cmd) return cmd_sweep(flags);
    if (*verify_cmd) return cmd_verify(flags);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoFailure;
  } catch (const benaloh::no_interior_equilibrium_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitInvalidInput;
}
