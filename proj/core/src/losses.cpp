#include "dynregret/losses.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "detail/overloaded.hpp"
#include "dynregret/error.hpp"

namespace dynregret {

namespace {

using detail::Overloaded;

// (lo, hi) of a one-dimensional feasible set
std::pair<double, double> hull_1d(const FeasibleSet& set) {
  return std::visit(Overloaded{[](const Interval& s) { return std::pair{s.lo, s.hi}; },
                               [](const Box& s) { return std::pair{s.lo[0], s.hi[0]}; },
                               [](const Ball& s) {
                                 return std::pair{s.center[0] - s.radius, s.center[0] + s.radius};
                               }},
                    set.shape());
}

void require_scalar_domain(const FeasibleSet& set, const char* family) {
  if (set.dim() != 1) throw DimensionMismatch(std::string(family) + " is a one-dimensional loss");
}

void require_lower_bound_params(double delta, double gamma) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("lower-bound loss requires 0 < delta < 1/2");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("lower-bound loss requires gamma > 0");
}

// f of LowerBoundF at scalar x
double lower_bound_value(double x, double delta, double gamma, double slope, double kink_value) {
  if (x < 0.0) return kink_value - slope * x;
  if (x <= 2.0 * delta) return std::pow(std::abs(x - delta), 1.0 + gamma) / (1.0 + gamma);
  return -(1.0 + 2.0 * gamma) * kink_value + slope * x;
}

double lower_bound_derivative(double x, double delta, double gamma, double slope) {
  if (x < 0.0) return -slope;
  if (x <= 2.0 * delta) {
    const double offset = x - delta;
    const double mag = std::pow(std::abs(offset), gamma);
    return offset < 0.0 ? -mag : mag;
  }
  return slope;
}

Point require_in(const FeasibleSet& set, Point p, const LossFamily& family) {
  if (!set.contains(p)) {
    throw Infeasible("canonical minimizer of " + family_name(family) + " lies outside the domain");
  }
  return p;
}

}  // namespace

Loss::Loss(LossFamily family, FeasibleSet domain) : family_(std::move(family)), domain_(std::move(domain)) {
  std::visit(Overloaded{[&](const HalfQuadratic&) {
                          require_scalar_domain(domain_, "half_quadratic");
                          dim_ = 1;
                          lipschitz_ = 2.0 * std::max(hull_1d(domain_).second, 0.0);
                          smoothness_ = 2.0;
                        },
                        [&](const ShiftedQuadratic& f) {
                          require_scalar_domain(domain_, "shifted_quadratic");
                          if (!std::isfinite(f.alpha)) throw InvalidArgument("alpha is not finite");
                          dim_ = 1;
                          lipschitz_ = 2.0 * max_distance(domain_, Point{f.alpha});
                          smoothness_ = 2.0;
                        },
                        [&](const CenteredQuadratic& f) {
                          require_same_dim(domain_.dim(), f.center.dim(), "centered_quadratic");
                          dim_ = f.center.dim();
                          lipschitz_ = max_distance(domain_, f.center);
                          smoothness_ = 1.0;
                        },
                        [&](const LowerBoundF& f) {
                          require_scalar_domain(domain_, "lower_bound_f");
                          require_lower_bound_params(f.delta, f.gamma);
                          dim_ = 1;
                          kink_slope_ = std::pow(f.delta, f.gamma);
                          kink_value_ = std::pow(f.delta, 1.0 + f.gamma) / (1.0 + f.gamma);
                          lipschitz_ = kink_slope_;
                          if (f.gamma >= 1.0) smoothness_ = f.gamma * std::pow(f.delta, f.gamma - 1.0);
                        },
                        [&](const LowerBoundG& f) {
                          require_scalar_domain(domain_, "lower_bound_g");
                          require_lower_bound_params(f.delta, f.gamma);
                          dim_ = 1;
                          kink_slope_ = std::pow(f.delta, f.gamma);
                          kink_value_ = std::pow(f.delta, 1.0 + f.gamma) / (1.0 + f.gamma);
                          lipschitz_ = kink_slope_;
                          if (f.gamma >= 1.0) smoothness_ = f.gamma * std::pow(f.delta, f.gamma - 1.0);
                        },
                        [&](const Linear& f) {
                          require_same_dim(domain_.dim(), f.coef.dim(), "linear");
                          dim_ = f.coef.dim();
                          lipschitz_ = f.coef.norm();
                          smoothness_ = 0.0;
                        }},
             family_);
}

double Loss::value(const Point& w) const {
  require_same_dim(dim_, w.dim(), "loss value");
  return std::visit(
      Overloaded{[&](const HalfQuadratic&) {
                   const double p = std::max(w[0], 0.0);
                   return p * p;
                 },
                 [&](const ShiftedQuadratic& f) {
                   const double e = w[0] - f.alpha;
                   return e * e;
                 },
                 [&](const CenteredQuadratic& f) { return 0.5 * squared_distance(w, f.center); },
                 [&](const LowerBoundF& f) {
                   return lower_bound_value(w[0], f.delta, f.gamma, kink_slope_, kink_value_);
                 },
                 [&](const LowerBoundG& f) {
                   return lower_bound_value(-w[0], f.delta, f.gamma, kink_slope_, kink_value_);
                 },
                 [&](const Linear& f) { return f.coef.dot(w); }},
      family_);
}

Point Loss::gradient(const Point& w) const {
  require_same_dim(dim_, w.dim(), "loss gradient");
  return std::visit(Overloaded{[&](const HalfQuadratic&) { return Point{2.0 * std::max(w[0], 0.0)}; },
                               [&](const ShiftedQuadratic& f) { return Point{2.0 * (w[0] - f.alpha)}; },
                               [&](const CenteredQuadratic& f) { return w - f.center; },
                               [&](const LowerBoundF& f) {
                                 return Point{lower_bound_derivative(w[0], f.delta, f.gamma, kink_slope_)};
                               },
                               [&](const LowerBoundG& f) {
                                 return Point{-lower_bound_derivative(-w[0], f.delta, f.gamma, kink_slope_)};
                               },
                               [&](const Linear& f) { return f.coef; }},
                    family_);
}

Point Loss::minimizer(const FeasibleSet& set) const {
  require_same_dim(dim_, set.dim(), "loss minimizer");
  return std::visit(Overloaded{[&](const HalfQuadratic&) { return require_in(set, Point{0.0}, family_); },
                               [&](const ShiftedQuadratic& f) { return require_in(set, Point{f.alpha}, family_); },
                               [&](const CenteredQuadratic& f) { return require_in(set, f.center, family_); },
                               [&](const LowerBoundF& f) { return require_in(set, Point{f.delta}, family_); },
                               [&](const LowerBoundG& f) { return require_in(set, Point{-f.delta}, family_); },
                               [&](const Linear& f) { return linear_minimizer(set, f.coef); }},
                    family_);
}

std::string family_name(const LossFamily& family) {
  return std::visit(Overloaded{[](const HalfQuadratic&) { return "half_quadratic"; },
                               [](const ShiftedQuadratic&) { return "shifted_quadratic"; },
                               [](const CenteredQuadratic&) { return "centered_quadratic"; },
                               [](const LowerBoundF&) { return "lower_bound_f"; },
                               [](const LowerBoundG&) { return "lower_bound_g"; },
                               [](const Linear&) { return "linear"; }},
                    family);
}

void to_json(nlohmann::json& j, const Loss& loss) {
  nlohmann::json params = nlohmann::json::object();
  std::visit(Overloaded{[&](const HalfQuadratic&) {},
                        [&](const ShiftedQuadratic& f) { params["alpha"] = f.alpha; },
                        [&](const CenteredQuadratic& f) { params["center"] = f.center.vector(); },
                        [&](const LowerBoundF& f) {
                          params["delta"] = f.delta;
                          params["gamma"] = f.gamma;
                        },
                        [&](const LowerBoundG& f) {
                          params["delta"] = f.delta;
                          params["gamma"] = f.gamma;
                        },
                        [&](const Linear& f) { params["coef"] = f.coef.vector(); }},
             loss.family());
  j = {{"family", family_name(loss.family())}, {"params", params}, {"domain", loss.domain()}};
}

Loss loss_from_json(const nlohmann::json& j) {
  try {
    const auto family = j.at("family").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    FeasibleSet domain = feasible_set_from_json(j.at("domain"));
    if (family == "half_quadratic") return Loss(HalfQuadratic{}, std::move(domain));
    if (family == "shifted_quadratic") return Loss(ShiftedQuadratic{params.at("alpha").get<double>()}, std::move(domain));
    if (family == "centered_quadratic") {
      return Loss(CenteredQuadratic{Point(params.at("center").get<std::vector<double>>())}, std::move(domain));
    }
    if (family == "lower_bound_f") {
      return Loss(LowerBoundF{params.at("delta").get<double>(), params.at("gamma").get<double>()}, std::move(domain));
    }
    if (family == "lower_bound_g") {
      return Loss(LowerBoundG{params.at("delta").get<double>(), params.at("gamma").get<double>()}, std::move(domain));
    }
    if (family == "linear") return Loss(Linear{Point(params.at("coef").get<std::vector<double>>())}, std::move(domain));
    throw InvalidArgument("unknown loss family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed loss descriptor: ") + e.what());
  }
}

}  // namespace dynregret
