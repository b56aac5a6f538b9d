#pragma once

#include <vector>

namespace dynregret::cli {

/// Least-squares slope of log(y) against log(x); needs >= 2 points with
/// x, y > 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dynregret::cli
