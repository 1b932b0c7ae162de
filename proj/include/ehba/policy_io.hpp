#pragma once

#include <string>

#include "json.hpp"

#include "ehba/game.hpp"
#include "ehba/policy.hpp"

namespace ehba {

// JSON forms for the generated policy families:
//   lft  {"kind":"lft","variant":"leader","target":[[0,1],[1,0]],"punish_len":3}
//   dt   {"kind":"dt","root":{"slot":2,"zero":{"action":1},"one":{...}}}
//   nn   {"kind":"nn","hidden_weights":[[..4..]x5],"hidden_bias":[..5..],
//         "output_weights":[..5..],"output_bias":x}
//   fp   {"kind":"fp"}
// Reconstruction needs the game because LFT security strategies and the
// fictitious player's best responses are game-derived.
nlohmann::json policy_to_json(const BehaviorPolicy& policy);
PolicyPtr policy_from_json(const nlohmann::json& j, const Game& g);

nlohmann::json policy_set_to_json(const PolicySet& set);
// Throws ConfigError when the file's game label does not match `g`.
PolicySet policy_set_from_json(const nlohmann::json& j, const Game& g);

void save_policy_set(const std::string& path, const PolicySet& set);
PolicySet load_policy_set(const std::string& path, const Game& g);

}  // namespace ehba
