#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace dynregret::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Command-line values that override the config file.
struct Overrides {
  std::optional<std::size_t> seeds;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> thin;
};

/// Runs one experiment; writes trace.csv and summary.json into the output
/// directory.
int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err);

/// Monte-Carlo sweep over the T list; writes rates.csv and sweep.json and
/// prints the fitted log-log slope per policy.
int cmd_sweep(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err);

/// Runs an acceptance suite, one line per criterion; 0 iff all pass.
int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err);

}  // namespace dynregret::cli
