#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynregret/error.hpp"
#include "dynregret/harness.hpp"
#include "dynregret/sequences.hpp"

namespace dynregret::cli {

/// Invalid or unreadable experiment configuration (exit code 2).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct PolicyEntry {
  PolicySpec spec;
  std::string label;      // e.g. "ogd/thm3"
  std::optional<double> xi;  // bandit shrink factor; empty means 1/T
};

struct ExperimentConfig {
  nlohmann::json raw;
  nlohmann::json sequence;  // {generator, params, seed?}
  std::vector<PolicyEntry> policies;
  nlohmann::json feedback;
  std::vector<std::size_t> horizons;
  std::size_t n_seeds = 1;
  std::uint64_t base_seed = 0;
  std::string out_dir = ".";
  std::size_t thin = 0;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// The configured sequence at horizon T. A seed in the descriptor pins the
/// adversary; otherwise `adversary_seed` is used.
LossSequence build_sequence(const ExperimentConfig& config, std::size_t horizon, std::uint64_t adversary_seed);

FeedbackKind build_feedback(const ExperimentConfig& config, const PolicyEntry& policy, std::size_t dim);

/// Builds every (T, policy) combination once and resolves its step size, so
/// configuration errors surface before anything runs.
void validate(const ExperimentConfig& config);

}  // namespace dynregret::cli
