#pragma once

#include "benaloh/game.hpp"
#include "benaloh/nash.hpp"
#include "benaloh/simulate.hpp"
#include "benaloh/stackelberg.hpp"

#include <nlohmann/json.hpp>

// JSON wire format.  Key names follow the conventional symbols for this
// game (asucc_V, afail_V, asucc_D, afail_D, c_audit, n_max, ...) so that
// config files and emitted reports read like the underlying model, while
// the C++ structs keep descriptive field names.
//
// Parsing is strict: missing or unknown keys and ill-typed values are
// rejected with std::invalid_argument or nlohmann's own type errors.

namespace benaloh {

void to_json(nlohmann::json& j, const GameParams& params);
void from_json(const nlohmann::json& j, GameParams& params);

// Voter strategies serialize as bare probability arrays.
void to_json(nlohmann::json& j, const VoterMixedStrategy& strategy);
void from_json(const nlohmann::json& j, VoterMixedStrategy& strategy);
void to_json(nlohmann::json& j, const VoterBehavioralStrategy& strategy);
void from_json(const nlohmann::json& j, VoterBehavioralStrategy& strategy);

// {"probs": [...], "p_never": x}
void to_json(nlohmann::json& j, const DeviceMixedStrategy& strategy);
void from_json(const nlohmann::json& j, DeviceMixedStrategy& strategy);

// {"u_V": ..., "u_D": ...}
void to_json(nlohmann::json& j, const PayoffPair& payoffs);

// {"s_V": [...], "b_V": [...], "s_D": {...}, "Eu": {...}, "R": ...}
void to_json(nlohmann::json& j, const NashSolution& solution);

// {"sval", "p_V_NE", "nash_Eu_V", "epsilon", "p_V_eps", "Eu_V_eps"}
void to_json(nlohmann::json& j, const StackelbergReport& report);

// Flat object with mean_u_V / mean_u_D, stderr_u_V / stderr_u_D, the three
// outcome frequencies, and the trial count.
void to_json(nlohmann::json& j, const SimResult& result);

}  // namespace benaloh
