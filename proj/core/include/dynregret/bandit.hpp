#pragma once

#include <cstddef>
#include <functional>

#include "dynregret/geometry.hpp"
#include "dynregret/losses.hpp"
#include "dynregret/point.hpp"
#include "dynregret/policies.hpp"
#include "dynregret/rng.hpp"

namespace dynregret {

/// Loss-value feedback at one point.
using ValueFn = std::function<double(const Point&)>;

/// Geometry of two-point feedback on a domain with R1 B inside it and the
/// domain inside R2 B.
struct BanditParams {
  FeasibleSet domain;
  FeasibleSet shrunk;  // (1 - xi) domain
  double xi = 0.0;
  double delta = 0.0;  // xi R1
  double r1 = 0.0;
  double r2 = 0.0;
  std::size_t dim = 1;

  /// Requires xi in (0, 1) and the origin interior to the domain.
  static BanditParams for_domain(const FeasibleSet& domain, double xi);
};

/// Relative slack of the probe containment check.
inline constexpr double kProbeTolerance = 1e-12;

/// d / (2 delta) (f(w + delta u) - f(w - delta u)) u. Throws InvalidArgument
/// if u is not a unit vector and Infeasible if a probe leaves `domain`.
Point two_point_estimate(const ValueFn& f, const Point& w, const Point& u, double delta, const FeasibleSet& domain);
Point two_point_estimate(const Loss& loss, const Point& w, const Point& u, double delta, const FeasibleSet& domain);

struct BanditRound {
  Point probe1;
  Point probe2;
  double value1 = 0.0;
  double value2 = 0.0;
  Point estimate;
};

/// One round of two-point bandit OGD from `state.current`: probes w +- delta u
/// with u uniform on the sphere, then state.current = Pi_{(1-xi)Omega}[w - eta g].
BanditRound bandit_ogd_round(PolicyState& state, const ValueFn& f, const BanditParams& params, Rng& rng);
BanditRound bandit_ogd_round(PolicyState& state, const Loss& loss, const BanditParams& params, Rng& rng);

/// How META forms its gradient estimate g_t and running estimate g_hat_t
/// from the sampled partial derivative v of coordinate i.
enum class MetaUpdate {
  /// g_t = g_hat_{t-1} + d (v - g_hat_{t-1,i}) e_i (unbiased for the gradient at
  /// w_hat_t), g_hat_t = g_hat_{t-1} + (v - g_hat_{t-1,i}) e_i.
  kUnbiased,
  /// g_t = d (v - g_hat_{t-1,i}) e_i, g_hat_t = g_t + g_hat_{t-1}.
  kAsPrinted,
};

struct MetaState {
  Point w;
  Point w_hat;
  Point g_hat;   // running estimate, g_hat_{t-1} before a round
  Point g_prev;  // g_{t-1}
  double eta = 0.0;
  MetaUpdate update = MetaUpdate::kUnbiased;
  std::size_t t = 0;
  // sum_t eta ||g_t - g_{t-1}||^2 and sum_t ||w_hat_t - w_hat_{t+1}||^2
  double sum_s = 0.0;
  double sum_what_moves = 0.0;
};

/// w_1 = w_hat_1 = 0, g_hat_0 = 0.
MetaState make_meta_state(const BanditParams& params, double eta, MetaUpdate update = MetaUpdate::kUnbiased);

struct MetaRound {
  Point probe1;
  Point probe2;
  double value1 = 0.0;
  double value2 = 0.0;
  std::size_t coordinate = 0;
  Point g;
};

/// One round of the coordinate-sampling META update.
MetaRound meta_round(MetaState& state, const ValueFn& f, const BanditParams& params, Rng& rng);
MetaRound meta_round(MetaState& state, const Loss& loss, const BanditParams& params, Rng& rng);

/// sqrt((r^2 + 2 r B) / (T G^2 d^2)).
double step_size_theorem4(double r, double path_budget, std::size_t horizon, double lipschitz, std::size_t dim);

/// sqrt((r^2 + 2 r B) G^2 d^2 T) + G (3 R1 + R2).
double regret_bound_theorem4(double r, double path_budget, double lipschitz, std::size_t dim, std::size_t horizon,
                             double r1, double r2);

/// min(sqrt((2 r B + r^2) / (8 S d^4)), 1 / (4 L d^{3/2} sqrt(ln T))); T >= 2.
double step_size_theorem5(double r, double path_budget, double gradient_budget, std::size_t dim, double smoothness,
                          std::size_t horizon);

/// Monte-Carlo estimate of E_u[f(w + delta u)] over the unit sphere.
double smoothed_loss_value(const Loss& loss, const Point& w, double delta, std::size_t n_samples, Rng& rng);

}  // namespace dynregret
