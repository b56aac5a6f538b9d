#pragma once

#include <string>
#include <vector>

namespace dynregret::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

/// Suite names accepted by `verify`.
const std::vector<std::string>& suite_names();

/// Criterion ids of a suite; throws InvalidArgument for an unknown name.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs one acceptance criterion (1-11). A criterion passes only if its
/// check holds and it finished within its time limit.
CriterionResult run_criterion(int id);

/// One line per criterion: "criterion N PASS|FAIL title: detail (s / limit s)".
std::string format_result(const CriterionResult& result);

}  // namespace dynregret::cli
