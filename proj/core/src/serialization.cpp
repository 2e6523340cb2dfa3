#include "benaloh/serialization.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace benaloh {

namespace {

using nlohmann::json;

void expect_object_keys(const json& j, const char* what,
                        std::initializer_list<const char*> keys) {
  if (!j.is_object()) {
    throw std::invalid_argument(std::string(what) + " must be a JSON object");
  }
  for (const char* key : keys) {
    if (!j.contains(key)) {
      std::ostringstream oss;
      oss << what << " is missing key \"" << key << "\"";
      throw std::invalid_argument(oss.str());
    }
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : keys) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      std::ostringstream oss;
      oss << what << " has unknown key \"" << item.key() << "\"";
      throw std::invalid_argument(oss.str());
    }
  }
}

std::vector<double> probability_array(const json& j, const char* what) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(what) + " must be a JSON array");
  }
  std::vector<double> probs;
  probs.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_number()) {
      throw std::invalid_argument(std::string(what) + " entries must be numbers");
    }
    probs.push_back(entry.get<double>());
  }
  return probs;
}

}  // namespace

void to_json(json& j, const GameParams& params) {
  j = json{{"asucc_V", params.voter_success_reward},
           {"afail_V", params.voter_cheated_penalty},
           {"asucc_D", params.device_success_reward},
           {"afail_D", params.device_caught_penalty},
           {"c_audit", params.audit_cost},
           {"n_max", params.max_rounds}};
}

void from_json(const json& j, GameParams& params) {
  expect_object_keys(j, "params",
                     {"asucc_V", "afail_V", "asucc_D", "afail_D", "c_audit",
                      "n_max"});
  for (const char* key : {"asucc_V", "afail_V", "asucc_D", "afail_D", "c_audit"}) {
    if (!j.at(key).is_number()) {
      throw std::invalid_argument(std::string(key) + " must be a number");
    }
  }
  if (!j.at("n_max").is_number_integer()) {
    throw std::invalid_argument("n_max must be an integer");
  }
  params.voter_success_reward = j.at("asucc_V").get<double>();
  params.voter_cheated_penalty = j.at("afail_V").get<double>();
  params.device_success_reward = j.at("asucc_D").get<double>();
  params.device_caught_penalty = j.at("afail_D").get<double>();
  params.audit_cost = j.at("c_audit").get<double>();
  params.max_rounds = j.at("n_max").get<int>();
}

void to_json(json& j, const VoterMixedStrategy& strategy) {
  j = strategy.probs;
}

void from_json(const json& j, VoterMixedStrategy& strategy) {
  strategy.probs = probability_array(j, "voter strategy");
}

void to_json(json& j, const VoterBehavioralStrategy& strategy) {
  j = strategy.probs;
}

void from_json(const json& j, VoterBehavioralStrategy& strategy) {
  strategy.probs = probability_array(j, "behavioral strategy");
}

void to_json(json& j, const DeviceMixedStrategy& strategy) {
  j = json{{"probs", strategy.probs}, {"p_never", strategy.p_never}};
}

void from_json(const json& j, DeviceMixedStrategy& strategy) {
  expect_object_keys(j, "device strategy", {"probs", "p_never"});
  strategy.probs = probability_array(j.at("probs"), "device strategy probs");
  if (!j.at("p_never").is_number()) {
    throw std::invalid_argument("p_never must be a number");
  }
  strategy.p_never = j.at("p_never").get<double>();
}

void to_json(json& j, const PayoffPair& payoffs) {
  j = json{{"u_V", payoffs.voter}, {"u_D", payoffs.device}};
}

void to_json(json& j, const NashSolution& solution) {
  j = json{{"s_V", solution.voter_mixed},
           {"b_V", solution.voter_behavioral},
           {"s_D", solution.device},
           {"Eu", solution.payoffs},
           {"R", solution.odds_ratio}};
}

void to_json(json& j, const StackelbergReport& report) {
  j = json{{"sval", report.sval},
           {"p_V_NE", report.nash_cast_probability},
           {"nash_Eu_V", report.nash_voter_payoff},
           {"epsilon", report.epsilon},
           {"p_V_eps", report.epsilon_cast_probability},
           {"Eu_V_eps", report.epsilon_guaranteed}};
}

void to_json(json& j, const SimResult& result) {
  j = json{{"mean_u_V", result.mean_voter},
           {"mean_u_D", result.mean_device},
           {"stderr_u_V", result.stderr_voter},
           {"stderr_u_D", result.stderr_device},
           {"freq_cast_as_intended", result.freq_cast_as_intended},
           {"freq_cheated", result.freq_cheated},
           {"freq_caught", result.freq_caught},
           {"trials", result.trials}};
}

}  // namespace benaloh
