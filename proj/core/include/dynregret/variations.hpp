#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dynregret/geometry.hpp"
#include "dynregret/losses.hpp"
#include "dynregret/point.hpp"
#include "dynregret/sequences.hpp"

namespace dynregret {

inline constexpr std::size_t kDefaultGrid = 10001;

/// Uniform grid with `per_axis` points per coordinate over the bounding box
/// of `set`, keeping only points inside the set. Grids with n and 2n - 1
/// points per axis are nested exactly. Supports d <= 2.
std::vector<Point> domain_grid(const FeasibleSet& set, std::size_t per_axis);

/// Sum over consecutive rounds of the distance between canonical minimizers.
double path_variation(const LossSequence& seq);

/// max over the grid of |a(w) - b(w)|.
double max_value_gap(const Loss& a, const Loss& b, const std::vector<Point>& grid);

/// max over the grid of ||grad a(w) - grad b(w)||^2; `b` empty means the
/// zero function.
double max_gradient_gap_sq(const Loss& a, const Loss* b, const std::vector<Point>& grid);

/// Grid approximation of sum_t max_w |f_t(w) - f_{t+1}(w)|.
double functional_variation(const LossSequence& seq, std::size_t grid = kDefaultGrid);

/// Grid approximation of sum_{t>=1} max_w ||grad f_t(w) - grad f_{t-1}(w)||^2
/// with grad f_0 = 0.
double gradient_variation(const LossSequence& seq, std::size_t grid = kDefaultGrid);

struct VariationReport {
  double path_variation = 0.0;
  std::optional<double> functional_variation;
  std::optional<double> gradient_variation;
  // the grid maxima are approximations of continuum maxima
  bool functional_approx = true;
  bool gradient_approx = true;
  std::size_t grid_resolution = kDefaultGrid;
};

/// Path variation always; the grid quantities when d <= 2 (left empty
/// otherwise). The gradient term is skipped when some loss is non-smooth.
VariationReport compute_variations(const LossSequence& seq, std::size_t grid = kDefaultGrid);

void to_json(nlohmann::json& j, const VariationReport& report);

}  // namespace dynregret
