#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "dynregret/harness.hpp"

namespace dynregret::cli {

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Columns t, w (or w1..wd), f, f_star, regret; one row per recorded round.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

/// Writes `content` to `path` with LF line endings, creating parent
/// directories. Throws Error on I/O failure.
void write_file(const std::string& path, const std::string& content);

std::string dump_json(const nlohmann::json& j);

}  // namespace dynregret::cli
