#include "ehba/policy_io.hpp"

#include <fstream>

#include "ehba/errors.hpp"
#include "ehba/generators.hpp"

namespace ehba {

namespace {

using nlohmann::json;

json tree_to_json(const TreeNode& t) {
  if (t.is_leaf()) return json{{"action", t.action}};
  return json{{"slot", t.slot}, {"zero", tree_to_json(*t.zero)}, {"one", tree_to_json(*t.one)}};
}

TreePtr tree_from_json(const json& j) {
  auto node = std::make_unique<TreeNode>();
  if (j.contains("slot")) {
    node->slot = j.at("slot").get<int>();
    if (node->slot < 0 || node->slot >= kTreeMemory) {
      throw ConfigError("decision tree: slot out of range");
    }
    node->zero = tree_from_json(j.at("zero"));
    node->one = tree_from_json(j.at("one"));
  } else {
    node->slot = -1;
    node->action = j.at("action").get<int>();
    if (node->action < 0 || node->action > 1) {
      throw ConfigError("decision tree: leaf action out of range");
    }
  }
  return node;
}

json net_to_json(const NetGenome& g) {
  json hidden = json::array();
  for (int j = 0; j < kNetHidden; ++j) {
    json row = json::array();
    for (int i = 0; i < kNetInputs; ++i) row.push_back(g.w[j * kNetInputs + i]);
    hidden.push_back(std::move(row));
  }
  json hidden_bias = json::array();
  for (int j = 0; j < kNetHidden; ++j) hidden_bias.push_back(g.w[kNetHidden * kNetInputs + j]);
  json output = json::array();
  for (int j = 0; j < kNetHidden; ++j) {
    output.push_back(g.w[kNetHidden * kNetInputs + kNetHidden + j]);
  }
  return json{{"hidden_weights", std::move(hidden)},
              {"hidden_bias", std::move(hidden_bias)},
              {"output_weights", std::move(output)},
              {"output_bias", g.w[kNetWeights - 1]}};
}

NetGenome net_from_json(const json& j) {
  NetGenome g;
  g.w.resize(kNetWeights);
  const json& hidden = j.at("hidden_weights");
  const json& hidden_bias = j.at("hidden_bias");
  const json& output = j.at("output_weights");
  if (hidden.size() != kNetHidden || hidden_bias.size() != kNetHidden ||
      output.size() != kNetHidden) {
    throw ConfigError("neural net: malformed weight arrays");
  }
  for (int jj = 0; jj < kNetHidden; ++jj) {
    const json& row = hidden.at(jj);
    if (row.size() != kNetInputs) throw ConfigError("neural net: malformed weight arrays");
    for (int i = 0; i < kNetInputs; ++i) g.w[jj * kNetInputs + i] = row.at(i).get<double>();
    g.w[kNetHidden * kNetInputs + jj] = hidden_bias.at(jj).get<double>();
    g.w[kNetHidden * kNetInputs + kNetHidden + jj] = output.at(jj).get<double>();
  }
  g.w[kNetWeights - 1] = j.at("output_bias").get<double>();
  return g;
}

}  // namespace

json policy_to_json(const BehaviorPolicy& policy) {
  if (const auto* lft = dynamic_cast<const LftPolicy*>(&policy)) {
    json target = json::array();
    for (const JointAction& a : lft->target().steps) {
      target.push_back(json::array({a.row, a.col}));
    }
    return json{{"kind", "lft"},
                {"variant", lft_variant_name(lft->variant())},
                {"target", std::move(target)},
                {"punish_len", lft->punish_len()}};
  }
  if (const auto* tree = dynamic_cast<const TreePolicy*>(&policy)) {
    return json{{"kind", "dt"}, {"root", tree_to_json(tree->root())}};
  }
  if (const auto* net = dynamic_cast<const NeuralNetPolicy*>(&policy)) {
    json j = net_to_json(net->genome());
    j["kind"] = "nn";
    return j;
  }
  if (policy.descriptor() == "fp") return json{{"kind", "fp"}};
  throw ConfigError("policy serialization: unsupported family '" + policy.descriptor() + "'");
}

PolicyPtr policy_from_json(const json& j, const Game& g) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "lft") {
    TargetSolution target;
    for (const json& step : j.at("target")) {
      target.steps.push_back(JointAction{step.at(0).get<int>(), step.at(1).get<int>()});
    }
    return std::make_shared<const LftPolicy>(g, parse_lft_variant(j.at("variant").get<std::string>()),
                                             std::move(target), j.value("punish_len", 3));
  }
  if (kind == "dt") {
    return std::make_shared<const TreePolicy>(tree_from_json(j.at("root")));
  }
  if (kind == "nn") {
    return std::make_shared<const NeuralNetPolicy>(net_from_json(j));
  }
  if (kind == "fp") return fictitious_play_policy(g);
  throw ConfigError("policy deserialization: unknown kind '" + kind + "'");
}

json policy_set_to_json(const PolicySet& set) {
  json policies = json::array();
  for (const PolicyPtr& p : set.policies) policies.push_back(policy_to_json(*p));
  return json{{"game", set.game_label},
              {"seat", set.seat == Player::row ? "row" : "col"},
              {"generator", set.generator},
              {"policies", std::move(policies)}};
}

PolicySet policy_set_from_json(const json& j, const Game& g) {
  PolicySet set;
  set.game_label = j.at("game").get<std::string>();
  if (set.game_label != g.label()) {
    throw ConfigError("policy set: file is for game '" + set.game_label + "', expected '" +
                      g.label() + "'");
  }
  const std::string seat = j.at("seat").get<std::string>();
  if (seat != "row" && seat != "col") throw ConfigError("policy set: bad seat '" + seat + "'");
  set.seat = seat == "row" ? Player::row : Player::col;
  set.generator = j.at("generator").get<std::string>();
  for (const json& pj : j.at("policies")) set.policies.push_back(policy_from_json(pj, g));
  return set;
}

void save_policy_set(const std::string& path, const PolicySet& set) {
  std::ofstream out(path);
  if (!out) throw ConfigError("policy set: cannot open '" + path + "' for writing");
  out << policy_set_to_json(set).dump(2) << '\n';
}

PolicySet load_policy_set(const std::string& path, const Game& g) {
  std::ifstream in(path);
  if (!in) throw ConfigError("policy set: cannot open '" + path + "'");
  json j;
  in >> j;
  return policy_set_from_json(j, g);
}

}  // namespace ehba
