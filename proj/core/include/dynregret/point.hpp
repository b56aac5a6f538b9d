#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace dynregret {

/// A real vector of fixed dimension; the decision variable of every policy.
///
/// Constructors taking external coordinates reject NaN/Inf. Arithmetic does
/// not re-validate, callers producing points from finite inputs stay finite.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0);
  Point(std::initializer_list<double> coords);
  explicit Point(std::vector<double> coords);

  static Point zeros(std::size_t dim) { return Point(dim); }
  static Point unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  double& operator[](std::size_t i) noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& vector() const noexcept { return coords_; }

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s) noexcept;

  /// this += s * other
  Point& axpy(double s, const Point& other);

  double dot(const Point& other) const;
  double squared_norm() const noexcept;
  double norm() const noexcept;
  bool is_finite() const noexcept;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator-(Point a);
Point operator*(double s, Point a);
Point operator*(Point a, double s);

double distance(const Point& a, const Point& b);
double squared_distance(const Point& a, const Point& b);

/// Throws DimensionMismatch naming `what` when dims differ.
void require_same_dim(std::size_t expected, std::size_t actual, std::string_view what);

}  // namespace dynregret
