#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "dynregret/geometry.hpp"
#include "dynregret/point.hpp"

namespace dynregret {

/// g1(w) = max(w, 0)^2 on R^1.
struct HalfQuadratic {
  friend bool operator==(const HalfQuadratic&, const HalfQuadratic&) = default;
};

/// g2(w) = (w - alpha)^2 on R^1.
struct ShiftedQuadratic {
  double alpha;
  friend bool operator==(const ShiftedQuadratic&, const ShiftedQuadratic&) = default;
};

/// f(w) = 0.5 * ||w - center||^2 on R^d.
struct CenteredQuadratic {
  Point center;
  friend bool operator==(const CenteredQuadratic&, const CenteredQuadratic&) = default;
};

/// Three-piece convex function with minimizer +delta: linear with slope
/// -delta^gamma left of 0, |x - delta|^(1+gamma) / (1+gamma) on [0, 2 delta],
/// linear with slope +delta^gamma right of 2 delta. Requires 0 < delta < 1/2,
/// gamma > 0.
struct LowerBoundF {
  double delta;
  double gamma;
  friend bool operator==(const LowerBoundF&, const LowerBoundF&) = default;
};

/// Mirror image of LowerBoundF: g(x) = f(-x), minimizer -delta.
struct LowerBoundG {
  double delta;
  double gamma;
  friend bool operator==(const LowerBoundG&, const LowerBoundG&) = default;
};

/// f(w) = coef^T w.
struct Linear {
  Point coef;
  friend bool operator==(const Linear&, const Linear&) = default;
};

using LossFamily =
    std::variant<HalfQuadratic, ShiftedQuadratic, CenteredQuadratic, LowerBoundF, LowerBoundG, Linear>;

/// One round's loss function bound to the domain it is played on.
///
/// Every family is defined on all of R^d so probes slightly outside the
/// domain still evaluate. G (Lipschitz constant over the domain) and L
/// (gradient Lipschitz constant, absent for non-smooth members) are fixed at
/// construction.
class Loss {
 public:
  Loss(LossFamily family, FeasibleSet domain);

  const LossFamily& family() const noexcept { return family_; }
  const FeasibleSet& domain() const noexcept { return domain_; }
  std::size_t dim() const noexcept { return dim_; }

  double value(const Point& w) const;
  /// Gradient, or for LowerBound* the piecewise derivative (middle piece at
  /// the breakpoints, where both one-sided derivatives agree).
  Point gradient(const Point& w) const;

  /// Canonical element of argmin over `set`; throws Infeasible if it falls
  /// outside `set`. HalfQuadratic returns 0.
  Point minimizer(const FeasibleSet& set) const;
  Point minimizer() const { return minimizer(domain_); }

  double lipschitz() const noexcept { return lipschitz_; }
  std::optional<double> smoothness() const noexcept { return smoothness_; }

  friend bool operator==(const Loss&, const Loss&) = default;

 private:
  LossFamily family_;
  FeasibleSet domain_;
  std::size_t dim_ = 1;
  double lipschitz_ = 0.0;
  std::optional<double> smoothness_;
  // LowerBound*: delta^gamma and delta^(1+gamma) / (1+gamma)
  double kink_slope_ = 0.0;
  double kink_value_ = 0.0;
};

std::string family_name(const LossFamily& family);

void to_json(nlohmann::json& j, const Loss& loss);
/// Parses {family, params, domain}; throws InvalidArgument on bad input.
Loss loss_from_json(const nlohmann::json& j);

}  // namespace dynregret
