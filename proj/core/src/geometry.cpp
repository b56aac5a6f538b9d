#include "dynregret/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "detail/overloaded.hpp"
#include "dynregret/error.hpp"

namespace dynregret {

namespace {

using detail::Overloaded;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " is not finite");
}

}  // namespace

FeasibleSet FeasibleSet::interval(double lo, double hi) {
  require_finite(lo, "interval lower end");
  require_finite(hi, "interval upper end");
  if (!(lo < hi)) throw InvalidArgument("interval requires lo < hi");
  return FeasibleSet(Interval{lo, hi});
}

FeasibleSet FeasibleSet::box(Point lo, Point hi) {
  require_same_dim(lo.dim(), hi.dim(), "box bounds");
  if (lo.dim() == 0) throw InvalidArgument("box must have dimension >= 1");
  for (std::size_t i = 0; i < lo.dim(); ++i) {
    if (!(lo[i] < hi[i])) throw InvalidArgument("box requires lo < hi componentwise");
  }
  return FeasibleSet(Box{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::ball(Point center, double radius) {
  if (center.dim() == 0) throw InvalidArgument("ball must have dimension >= 1");
  require_finite(radius, "ball radius");
  if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::cube(std::size_t dim, double lo, double hi) {
  if (dim == 1) return interval(lo, hi);
  return box(Point(dim, lo), Point(dim, hi));
}

std::size_t FeasibleSet::dim() const noexcept {
  return std::visit(Overloaded{[](const Interval&) -> std::size_t { return 1; },
                               [](const Box& b) { return b.lo.dim(); },
                               [](const Ball& b) { return b.center.dim(); }},
                    shape_);
}

bool FeasibleSet::contains(const Point& x, double tol) const {
  require_same_dim(dim(), x.dim(), "contains");
  return std::visit(
      Overloaded{[&](const Interval& s) { return x[0] >= s.lo - tol && x[0] <= s.hi + tol; },
                 [&](const Box& s) {
                   for (std::size_t i = 0; i < x.dim(); ++i) {
                     if (x[i] < s.lo[i] - tol || x[i] > s.hi[i] + tol) return false;
                   }
                   return true;
                 },
                 [&](const Ball& s) { return distance(x, s.center) <= s.radius + tol; }},
      shape_);
}

Point project(const FeasibleSet& set, const Point& x) {
  require_same_dim(set.dim(), x.dim(), "project");
  return std::visit(
      Overloaded{[&](const Interval& s) { return Point{std::clamp(x[0], s.lo, s.hi)}; },
                 [&](const Box& s) {
                   Point y = x;
                   for (std::size_t i = 0; i < y.dim(); ++i) y[i] = std::clamp(y[i], s.lo[i], s.hi[i]);
                   return y;
                 },
                 [&](const Ball& s) {
                   const double dist = distance(x, s.center);
                   if (dist <= s.radius) return x;
                   const Point offset = x - s.center;
                   double scale = s.radius / dist;
                   Point y = s.center + scale * offset;
                   // rounding can leave y an ulp outside; pull it in so that a
                   // second projection is the identity
                   while (distance(y, s.center) > s.radius) {
                     scale = std::nextafter(scale, 0.0);
                     y = s.center + scale * offset;
                   }
                   return y;
                 }},
      set.shape());
}

FeasibleSet shrink(const FeasibleSet& set, double xi) {
  if (!(xi >= 0.0 && xi < 1.0)) throw InvalidArgument("shrink factor must lie in [0, 1)");
  if (xi == 0.0) return set;
  const double s = 1.0 - xi;
  return std::visit(
      Overloaded{[&](const Interval& i) {
                   if (i.lo > 0.0 || i.hi < 0.0) throw InvalidArgument("shrink requires the origin in the interval");
                   return FeasibleSet::interval(s * i.lo, s * i.hi);
                 },
                 [&](const Box& b) {
                   if (!set.contains(Point::zeros(b.lo.dim())))
                     throw InvalidArgument("shrink requires the origin in the box");
                   return FeasibleSet::box(s * b.lo, s * b.hi);
                 },
                 [&](const Ball& b) {
                   if (b.center.squared_norm() != 0.0)
                     throw InvalidArgument("shrink requires a ball centered at the origin");
                   return FeasibleSet::ball(b.center, s * b.radius);
                 }},
      set.shape());
}

double diameter(const FeasibleSet& set) {
  return std::visit(Overloaded{[](const Interval& s) { return s.hi - s.lo; },
                               [](const Box& s) { return distance(s.hi, s.lo); },
                               [](const Ball& s) { return 2.0 * s.radius; }},
                    set.shape());
}

double max_distance(const FeasibleSet& set, const Point& x) {
  require_same_dim(set.dim(), x.dim(), "max_distance");
  return std::visit(Overloaded{[&](const Interval& s) {
                                 return std::max(std::abs(x[0] - s.lo), std::abs(x[0] - s.hi));
                               },
                               [&](const Box& s) {
                                 double acc = 0.0;
                                 for (std::size_t i = 0; i < x.dim(); ++i) {
                                   const double far = std::max(std::abs(x[i] - s.lo[i]), std::abs(x[i] - s.hi[i]));
                                   acc += far * far;
                                 }
                                 return std::sqrt(acc);
                               },
                               [&](const Ball& s) { return distance(x, s.center) + s.radius; }},
                    set.shape());
}

double inscribed_radius(const FeasibleSet& set) {
  return std::visit(Overloaded{[](const Interval& s) { return std::max(0.0, std::min(-s.lo, s.hi)); },
                               [](const Box& s) {
                                 double r = std::numeric_limits<double>::infinity();
                                 for (std::size_t i = 0; i < s.lo.dim(); ++i)
                                   r = std::min({r, -s.lo[i], s.hi[i]});
                                 return std::max(0.0, r);
                               },
                               [](const Ball& s) { return std::max(0.0, s.radius - s.center.norm()); }},
                    set.shape());
}

double circumscribed_radius(const FeasibleSet& set) {
  return max_distance(set, Point::zeros(set.dim()));
}

Point linear_minimizer(const FeasibleSet& set, const Point& c) {
  require_same_dim(set.dim(), c.dim(), "linear_minimizer");
  const Point fallback = project(set, Point::zeros(set.dim()));
  return std::visit(Overloaded{[&](const Interval& s) {
                                 if (c[0] > 0.0) return Point{s.lo};
                                 if (c[0] < 0.0) return Point{s.hi};
                                 return fallback;
                               },
                               [&](const Box& s) {
                                 Point y = fallback;
                                 for (std::size_t i = 0; i < y.dim(); ++i) {
                                   if (c[i] > 0.0) y[i] = s.lo[i];
                                   if (c[i] < 0.0) y[i] = s.hi[i];
                                 }
                                 return y;
                               },
                               [&](const Ball& s) {
                                 const double n = c.norm();
                                 if (n == 0.0) return fallback;
                                 return project(set, s.center - (s.radius / n) * c);
                               }},
                    set.shape());
}

Point random_unit_vector(std::size_t dim, Rng& rng) {
  if (dim == 0) throw InvalidArgument("direction dimension must be positive");
  if (dim == 1) return Point{rng.coin() ? 1.0 : -1.0};
  Point u(dim);
  double n = 0.0;
  do {
    for (std::size_t i = 0; i < dim; ++i) u[i] = rng.normal();
    n = u.norm();
  } while (n == 0.0);
  u *= 1.0 / n;
  return u;
}

void to_json(nlohmann::json& j, const FeasibleSet& set) {
  std::visit(Overloaded{[&](const Interval& s) { j = {{"type", "interval"}, {"lo", s.lo}, {"hi", s.hi}}; },
                        [&](const Box& s) {
                          j = {{"type", "box"}, {"lo", s.lo.vector()}, {"hi", s.hi.vector()}};
                        },
                        [&](const Ball& s) {
                          j = {{"type", "ball"}, {"center", s.center.vector()}, {"radius", s.radius}};
                        }},
             set.shape());
}

FeasibleSet feasible_set_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "interval") return FeasibleSet::interval(j.at("lo").get<double>(), j.at("hi").get<double>());
    if (type == "box") {
      return FeasibleSet::box(Point(j.at("lo").get<std::vector<double>>()),
                              Point(j.at("hi").get<std::vector<double>>()));
    }
    if (type == "ball") {
      return FeasibleSet::ball(Point(j.at("center").get<std::vector<double>>()), j.at("radius").get<double>());
    }
    if (type == "cube") {
      return FeasibleSet::cube(j.at("d").get<std::size_t>(), j.at("lo").get<double>(), j.at("hi").get<double>());
    }
    throw InvalidArgument("unknown domain type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed domain descriptor: ") + e.what());
  }
}

}  // namespace dynregret
