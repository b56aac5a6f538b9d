#include "config.hpp"

#include <fstream>

namespace dynregret::cli {

namespace {

std::string label_of(const nlohmann::json& desc) {
  std::string label = desc.at("type").get<std::string>();
  if (desc.contains("eta_rule")) {
    label += "/" + desc.at("eta_rule").get<std::string>();
  } else if (desc.contains("eta")) {
    label += "/eta=" + desc.at("eta").dump();
  }
  return label;
}

PolicyEntry policy_entry(const nlohmann::json& desc) {
  PolicyEntry entry{policy_from_json(desc), label_of(desc), std::nullopt};
  if (desc.contains("xi")) entry.xi = desc.at("xi").get<double>();
  if (desc.contains("xi_rule")) {
    const auto rule = desc.at("xi_rule").get<std::string>();
    if (rule != "1/T") throw ConfigError("unsupported xi_rule '" + rule + "' (only \"1/T\")");
    if (entry.xi) throw ConfigError("policy gives both xi and xi_rule");
  }
  return entry;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig config;
    config.raw = j;
    config.sequence = j.at("sequence");
    if (!config.sequence.is_object()) throw ConfigError("sequence must be an object");

    const nlohmann::json& policy = j.at("policy");
    if (policy.is_array()) {
      for (const auto& p : policy) config.policies.push_back(policy_entry(p));
    } else {
      config.policies.push_back(policy_entry(policy));
    }
    if (config.policies.empty()) throw ConfigError("policy list is empty");

    config.feedback = j.at("feedback");

    const nlohmann::json* horizon = nullptr;
    if (j.contains("T")) {
      horizon = &j.at("T");
    } else if (config.sequence.contains("T")) {
      horizon = &config.sequence.at("T");
    }
    if (horizon == nullptr) throw ConfigError("config needs T (a number or a list)");
    if (horizon->is_array()) {
      for (const auto& t : *horizon) config.horizons.push_back(t.get<std::size_t>());
    } else {
      config.horizons.push_back(horizon->get<std::size_t>());
    }
    if (config.horizons.empty()) throw ConfigError("T list is empty");
    for (std::size_t t : config.horizons) {
      if (t == 0) throw ConfigError("T must be positive");
    }

    config.n_seeds = j.value("n_seeds", std::size_t{1});
    if (config.n_seeds == 0) throw ConfigError("n_seeds must be positive");
    config.base_seed = j.value("base_seed", std::uint64_t{0});
    if (j.contains("output")) {
      const auto& out = j.at("output");
      config.out_dir = out.is_string() ? out.get<std::string>() : out.value("dir", std::string("."));
      if (out.is_object()) config.thin = out.value("thin", std::size_t{0});
    }
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

LossSequence build_sequence(const ExperimentConfig& config, std::size_t horizon, std::uint64_t adversary_seed) {
  const bool pinned = config.sequence.contains("seed") && !config.sequence.at("seed").is_null();
  return sequence_from_descriptor(config.sequence, horizon,
                                  pinned ? std::nullopt : std::optional<std::uint64_t>(adversary_seed));
}

FeedbackKind build_feedback(const ExperimentConfig& config, const PolicyEntry& policy, std::size_t dim) {
  FeedbackKind feedback = feedback_from_json(config.feedback, dim);
  if (auto* bandit = std::get_if<TwoPointBandit>(&feedback); bandit != nullptr && !bandit->xi) bandit->xi = policy.xi;
  return feedback;
}

void validate(const ExperimentConfig& config) {
  try {
    for (std::size_t t : config.horizons) {
      const LossSequence seq = build_sequence(config, t, derive_seed(config.base_seed + 1, Stream::kAdversary));
      for (const auto& policy : config.policies) {
        const FeedbackKind feedback = build_feedback(config, policy, seq.dim());
        check_compatible(policy.spec, feedback);
        resolve_step_size(policy.spec, seq, feedback);
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace dynregret::cli
