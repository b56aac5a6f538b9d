#include "dynregret/variations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "detail/overloaded.hpp"
#include "dynregret/error.hpp"

namespace dynregret {

namespace {

using detail::Overloaded;

std::pair<Point, Point> bounding_box(const FeasibleSet& set) {
  return std::visit(Overloaded{[](const Interval& s) { return std::pair{Point{s.lo}, Point{s.hi}}; },
                               [](const Box& s) { return std::pair{s.lo, s.hi}; },
                               [](const Ball& s) {
                                 Point lo = s.center;
                                 Point hi = s.center;
                                 for (std::size_t i = 0; i < lo.dim(); ++i) {
                                   lo[i] -= s.radius;
                                   hi[i] += s.radius;
                                 }
                                 return std::pair{lo, hi};
                               }},
                    set.shape());
}

// k-th of n evenly spaced points on [lo, hi]; (hi - lo) * k / (n - 1) keeps
// the n and 2n - 1 grids nested bit-for-bit
double grid_coord(double lo, double hi, std::size_t k, std::size_t n) {
  if (k + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

void require_grid(const LossSequence& seq, std::size_t grid) {
  if (grid < 2) throw InvalidArgument("grid resolution must be at least 2");
  if (seq.dim() > 2) throw Unsupported("grid variations support d <= 2");
}

}  // namespace

std::vector<Point> domain_grid(const FeasibleSet& set, std::size_t per_axis) {
  if (per_axis < 2) throw InvalidArgument("grid resolution must be at least 2");
  const auto [lo, hi] = bounding_box(set);
  std::vector<Point> out;
  if (set.dim() == 1) {
    out.reserve(per_axis);
    for (std::size_t k = 0; k < per_axis; ++k) out.push_back(Point{grid_coord(lo[0], hi[0], k, per_axis)});
    return out;
  }
  if (set.dim() != 2) throw Unsupported("grid evaluation supports d <= 2");
  for (std::size_t i = 0; i < per_axis; ++i) {
    const double x = grid_coord(lo[0], hi[0], i, per_axis);
    for (std::size_t j = 0; j < per_axis; ++j) {
      Point p{x, grid_coord(lo[1], hi[1], j, per_axis)};
      if (set.contains(p)) out.push_back(std::move(p));
    }
  }
  return out;
}

double path_variation(const LossSequence& seq) {
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    const std::size_t a = seq.distinct_index(t);
    const std::size_t b = seq.distinct_index(t + 1);
    if (a == b) continue;
    total += distance(seq.minimizer(t), seq.minimizer(t + 1));
  }
  return total;
}

double max_value_gap(const Loss& a, const Loss& b, const std::vector<Point>& grid) {
  double best = 0.0;
  for (const Point& w : grid) best = std::max(best, std::abs(a.value(w) - b.value(w)));
  return best;
}

double max_gradient_gap_sq(const Loss& a, const Loss* b, const std::vector<Point>& grid) {
  double best = 0.0;
  for (const Point& w : grid) {
    Point diff = a.gradient(w);
    if (b != nullptr) diff -= b->gradient(w);
    best = std::max(best, diff.squared_norm());
  }
  return best;
}

double functional_variation(const LossSequence& seq, std::size_t grid) {
  require_grid(seq, grid);
  const std::vector<Point> points = domain_grid(seq.domain(), grid);
  std::map<std::pair<std::size_t, std::size_t>, double> cache;
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    const std::size_t a = seq.distinct_index(t);
    const std::size_t b = seq.distinct_index(t + 1);
    if (a == b) continue;
    auto [it, fresh] = cache.try_emplace({a, b}, 0.0);
    if (fresh) it->second = max_value_gap(seq.distinct_loss(a), seq.distinct_loss(b), points);
    total += it->second;
  }
  return total;
}

double gradient_variation(const LossSequence& seq, std::size_t grid) {
  require_grid(seq, grid);
  const std::vector<Point> points = domain_grid(seq.domain(), grid);
  std::map<std::pair<std::size_t, std::size_t>, double> cache;
  double total = max_gradient_gap_sq(seq.loss(0), nullptr, points);
  for (std::size_t t = 1; t < seq.size(); ++t) {
    const std::size_t prev = seq.distinct_index(t - 1);
    const std::size_t cur = seq.distinct_index(t);
    if (prev == cur) continue;
    auto [it, fresh] = cache.try_emplace({cur, prev}, 0.0);
    if (fresh) it->second = max_gradient_gap_sq(seq.distinct_loss(cur), &seq.distinct_loss(prev), points);
    total += it->second;
  }
  return total;
}

VariationReport compute_variations(const LossSequence& seq, std::size_t grid) {
  VariationReport report;
  report.path_variation = path_variation(seq);
  report.grid_resolution = grid;
  if (seq.dim() <= 2) {
    report.functional_variation = functional_variation(seq, grid);
    if (seq.smoothness()) report.gradient_variation = gradient_variation(seq, grid);
  }
  return report;
}

void to_json(nlohmann::json& j, const VariationReport& report) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  j = {{"path_variation", report.path_variation},
       {"functional_variation", opt(report.functional_variation)},
       {"functional_approx", report.functional_approx},
       {"gradient_variation", opt(report.gradient_variation)},
       {"gradient_approx", report.gradient_approx},
       {"grid_resolution", report.grid_resolution}};
}

}  // namespace dynregret
