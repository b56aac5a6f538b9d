#pragma once

#include <cstddef>
#include <optional>

#include "dynregret/geometry.hpp"
#include "dynregret/losses.hpp"
#include "dynregret/point.hpp"

namespace dynregret {

/// Iterate of a first-order policy. `current` is the decision of round t.
struct PolicyState {
  Point current;
  double eta = 0.0;
  FeasibleSet domain;
  std::size_t t = 0;
};

/// State with w_1 = init (default: projection of 0 onto the domain). Throws
/// Infeasible if `init` is outside the domain and InvalidArgument if eta < 0.
PolicyState make_policy_state(FeasibleSet domain, double eta, std::optional<Point> init = std::nullopt);

/// w_{t+1} = argmin over the domain of the loss just revealed.
const Point& follow_minimizer_step(PolicyState& state, const Loss& previous_loss);

/// w_{t+1} = Pi[w_t - eta g].
const Point& ogd_step(PolicyState& state, const Point& g);

/// 1 / (2L).
double step_size_theorem1(double smoothness);

/// sqrt((r^2 + 2 r B) / (T (G^2 + lambda^2))).
double step_size_theorem3(double r, double path_budget, std::size_t horizon, double lipschitz, double lambda_sq);

/// 2L (r^2 + 2 r B).
double regret_bound_theorem1(double smoothness, double r, double path_budget);

/// sqrt((r^2 + 2 r B)(G^2 + lambda^2) T).
double regret_bound_theorem3(double r, double path_budget, double lipschitz, double lambda_sq, std::size_t horizon);

/// G r + G V^p, the bound of the follow-the-previous-minimizer policy.
double full_information_bound(double lipschitz, double r, double path_variation);

/// RHS - LHS of the per-step inequality
///   g^T (w_t - w*_t) <= eta/2 ||g||^2 + r ||w*_t - w*_{t+1}|| / eta
///     + (||w_t - w*_t||^2 - ||w_{t+1} - w*_t||^2 - ||w*_t - w*_{t+1}||^2) / (2 eta).
/// Non-negative up to rounding whenever w_next = Pi[w_t - eta g].
double lemma1_gap(const Point& w_t, const Point& w_next, const Point& w_star_t, const Point& w_star_next,
                  const Point& g_t, double eta, double r);

/// Same inequality with ||w_{t+1} - w*_{t+1}||^2 in place of
/// ||w_{t+1} - w*_t||^2, the form that telescopes over t; it additionally
/// needs r >= ||w_{t+1} - w*_{t+1}||.
double lemma1_gap_telescoped(const Point& w_t, const Point& w_next, const Point& w_star_t,
                             const Point& w_star_next, const Point& g_t, double eta, double r);

}  // namespace dynregret
