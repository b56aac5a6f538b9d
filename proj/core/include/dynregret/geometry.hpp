#pragma once

#include <cstddef>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "dynregret/point.hpp"
#include "dynregret/rng.hpp"

namespace dynregret {

/// One-dimensional interval [lo, hi], lo < hi.
struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box with lo < hi componentwise.
struct Box {
  Point lo;
  Point hi;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Closed Euclidean ball.
struct Ball {
  Point center;
  double radius;
  friend bool operator==(const Ball&, const Ball&) = default;
};

/// Convex feasible domain. Immutable after construction; constructors
/// validate the shape invariants.
class FeasibleSet {
 public:
  using Shape = std::variant<Interval, Box, Ball>;

  static FeasibleSet interval(double lo, double hi);
  static FeasibleSet box(Point lo, Point hi);
  static FeasibleSet ball(Point center, double radius);
  /// Box [lo, hi]^d.
  static FeasibleSet cube(std::size_t dim, double lo, double hi);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept;

  /// Membership with an absolute slack `tol` (0 means exact).
  bool contains(const Point& x, double tol = 0.0) const;

  friend bool operator==(const FeasibleSet&, const FeasibleSet&) = default;

 private:
  explicit FeasibleSet(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

/// Euclidean projection argmin_{y in set} ||y - x||. Idempotent bit-for-bit.
Point project(const FeasibleSet& set, const Point& x);

/// The scaled set (1 - xi) * set; requires xi in [0, 1) and the origin in the
/// set (Ball: centered at the origin).
FeasibleSet shrink(const FeasibleSet& set, double xi);

/// Largest pairwise distance within the set; the default r of the regret bounds.
double diameter(const FeasibleSet& set);

/// sup_{w in set} ||w - x||.
double max_distance(const FeasibleSet& set, const Point& x);

/// Largest R with R*B (unit ball at origin) contained in the set; 0 if the
/// origin is not interior.
double inscribed_radius(const FeasibleSet& set);

/// Smallest R with the set contained in R*B.
double circumscribed_radius(const FeasibleSet& set);

/// Point of the set minimising c^T w (ties resolved toward the projection of 0).
Point linear_minimizer(const FeasibleSet& set, const Point& c);

/// Uniform direction on the unit sphere: +-1 for d = 1, a normalised
/// Gaussian draw otherwise.
Point random_unit_vector(std::size_t dim, Rng& rng);

void to_json(nlohmann::json& j, const FeasibleSet& set);
FeasibleSet feasible_set_from_json(const nlohmann::json& j);

}  // namespace dynregret
