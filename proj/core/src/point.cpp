#include "dynregret/point.hpp"

#include <cmath>
#include <string>

#include "dynregret/error.hpp"

namespace dynregret {

namespace {

void require_finite(const std::vector<double>& coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) throw InvalidArgument("point coordinate is not finite");
  }
}

}  // namespace

Point::Point(std::size_t dim, double fill) : coords_(dim, fill) {
  if (!std::isfinite(fill)) throw InvalidArgument("point coordinate is not finite");
}

Point::Point(std::initializer_list<double> coords) : coords_(coords) { require_finite(coords_); }

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { require_finite(coords_); }

Point Point::unit(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw InvalidArgument("unit axis out of range");
  Point e(dim);
  e.coords_[axis] = 1.0;
  return e;
}

Point& Point::operator+=(const Point& other) {
  require_same_dim(dim(), other.dim(), "point addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) {
  require_same_dim(dim(), other.dim(), "point subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) noexcept {
  for (double& c : coords_) c *= s;
  return *this;
}

Point& Point::axpy(double s, const Point& other) {
  require_same_dim(dim(), other.dim(), "axpy");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += s * other.coords_[i];
  return *this;
}

double Point::dot(const Point& other) const {
  require_same_dim(dim(), other.dim(), "dot product");
  double acc = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) acc += coords_[i] * other.coords_[i];
  return acc;
}

double Point::squared_norm() const noexcept {
  double acc = 0.0;
  for (double c : coords_) acc += c * c;
  return acc;
}

double Point::norm() const noexcept {
  if (coords_.size() == 1) return std::abs(coords_[0]);
  return std::sqrt(squared_norm());
}

bool Point::is_finite() const noexcept {
  for (double c : coords_) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator-(Point a) { return a *= -1.0; }
Point operator*(double s, Point a) { return a *= s; }
Point operator*(Point a, double s) { return a *= s; }

double squared_distance(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim(), "distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

double distance(const Point& a, const Point& b) {
  if (a.dim() == 1 && b.dim() == 1) return std::abs(a[0] - b[0]);
  return std::sqrt(squared_distance(a, b));
}

void require_same_dim(std::size_t expected, std::size_t actual, std::string_view what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(actual) +
                            " does not match " + std::to_string(expected));
  }
}

}  // namespace dynregret
