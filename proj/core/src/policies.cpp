#include "dynregret/policies.hpp"

#include <cmath>
#include <string>

#include "dynregret/error.hpp"

namespace dynregret {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be non-negative");
}

}  // namespace

PolicyState make_policy_state(FeasibleSet domain, double eta, std::optional<Point> init) {
  require_non_negative(eta, "step size");
  Point w = init ? std::move(*init) : project(domain, Point::zeros(domain.dim()));
  require_same_dim(domain.dim(), w.dim(), "initial iterate");
  if (!domain.contains(w)) throw Infeasible("initial iterate lies outside the domain");
  return PolicyState{std::move(w), eta, std::move(domain), 0};
}

const Point& follow_minimizer_step(PolicyState& state, const Loss& previous_loss) {
  state.current = previous_loss.minimizer(state.domain);
  ++state.t;
  return state.current;
}

const Point& ogd_step(PolicyState& state, const Point& g) {
  require_same_dim(state.current.dim(), g.dim(), "ogd gradient");
  Point next = state.current;
  next.axpy(-state.eta, g);
  state.current = project(state.domain, next);
  ++state.t;
  return state.current;
}

double step_size_theorem1(double smoothness) {
  require_positive(smoothness, "smoothness L");
  return 1.0 / (2.0 * smoothness);
}

double step_size_theorem3(double r, double path_budget, std::size_t horizon, double lipschitz, double lambda_sq) {
  require_positive(r, "r");
  require_non_negative(path_budget, "B_T");
  if (horizon == 0) throw InvalidArgument("T must be positive");
  require_positive(lipschitz, "G");
  require_non_negative(lambda_sq, "lambda^2");
  return std::sqrt((r * r + 2.0 * r * path_budget) /
                   (static_cast<double>(horizon) * (lipschitz * lipschitz + lambda_sq)));
}

double regret_bound_theorem1(double smoothness, double r, double path_budget) {
  return 2.0 * smoothness * (r * r + 2.0 * r * path_budget);
}

double regret_bound_theorem3(double r, double path_budget, double lipschitz, double lambda_sq, std::size_t horizon) {
  return std::sqrt((r * r + 2.0 * r * path_budget) * (lipschitz * lipschitz + lambda_sq) *
                   static_cast<double>(horizon));
}

double full_information_bound(double lipschitz, double r, double path_variation) {
  return lipschitz * r + lipschitz * path_variation;
}

namespace {

double gap(const Point& w_t, const Point& w_next, const Point& w_star_t, const Point& w_star_next, const Point& g_t,
           double eta, double r, const Point& anchor_next) {
  require_positive(eta, "step size");
  const double hop = distance(w_star_t, w_star_next);
  const double rhs = 0.5 * eta * g_t.squared_norm() + r * hop / eta +
                     (squared_distance(w_t, w_star_t) - squared_distance(w_next, anchor_next) - hop * hop) /
                         (2.0 * eta);
  return rhs - g_t.dot(w_t - w_star_t);
}

}  // namespace

double lemma1_gap(const Point& w_t, const Point& w_next, const Point& w_star_t, const Point& w_star_next,
                  const Point& g_t, double eta, double r) {
  return gap(w_t, w_next, w_star_t, w_star_next, g_t, eta, r, w_star_t);
}

double lemma1_gap_telescoped(const Point& w_t, const Point& w_next, const Point& w_star_t,
                             const Point& w_star_next, const Point& g_t, double eta, double r) {
  return gap(w_t, w_next, w_star_t, w_star_next, g_t, eta, r, w_star_next);
}

}  // namespace dynregret
