#include "dynregret/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynregret/error.hpp"

namespace dynregret {

namespace {

void require_probe(const FeasibleSet& domain, const Point& p, double scale) {
  if (!domain.contains(p, kProbeTolerance * std::max(1.0, scale))) {
    throw Infeasible("bandit probe lies outside the domain");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

ValueFn value_of(const Loss& loss) {
  return [&loss](const Point& p) { return loss.value(p); };
}

}  // namespace

BanditParams BanditParams::for_domain(const FeasibleSet& domain, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) throw InvalidArgument("shrink factor xi must lie in (0, 1)");
  const double r1 = inscribed_radius(domain);
  if (!(r1 > 0.0)) throw InvalidArgument("two-point feedback needs the origin interior to the domain");
  const double r2 = circumscribed_radius(domain);
  return BanditParams{domain, shrink(domain, xi), xi, xi * r1, r1, r2, domain.dim()};
}

Point two_point_estimate(const ValueFn& f, const Point& w, const Point& u, double delta, const FeasibleSet& domain) {
  require_same_dim(domain.dim(), w.dim(), "two-point estimate center");
  require_same_dim(domain.dim(), u.dim(), "two-point estimate direction");
  require_positive(delta, "probe radius delta");
  if (std::abs(u.norm() - 1.0) > 1e-12) throw InvalidArgument("two-point direction must be a unit vector");
  const Point plus = w + delta * u;
  const Point minus = w - delta * u;
  const double scale = circumscribed_radius(domain);
  require_probe(domain, plus, scale);
  require_probe(domain, minus, scale);
  const double d = static_cast<double>(w.dim());
  return (d / (2.0 * delta) * (f(plus) - f(minus))) * u;
}

Point two_point_estimate(const Loss& loss, const Point& w, const Point& u, double delta, const FeasibleSet& domain) {
  return two_point_estimate(value_of(loss), w, u, delta, domain);
}

BanditRound bandit_ogd_round(PolicyState& state, const ValueFn& f, const BanditParams& params, Rng& rng) {
  require_same_dim(params.dim, state.current.dim(), "bandit iterate");
  const Point& w = state.current;
  const Point u = random_unit_vector(params.dim, rng);
  BanditRound round{w + params.delta * u, w - params.delta * u, 0.0, 0.0, Point{}};
  require_probe(params.domain, round.probe1, params.r2);
  require_probe(params.domain, round.probe2, params.r2);
  round.value1 = f(round.probe1);
  round.value2 = f(round.probe2);
  const double d = static_cast<double>(params.dim);
  round.estimate = (d / (2.0 * params.delta) * (round.value1 - round.value2)) * u;
  Point next = w;
  next.axpy(-state.eta, round.estimate);
  state.current = project(params.shrunk, next);
  ++state.t;
  return round;
}

BanditRound bandit_ogd_round(PolicyState& state, const Loss& loss, const BanditParams& params, Rng& rng) {
  return bandit_ogd_round(state, value_of(loss), params, rng);
}

MetaState make_meta_state(const BanditParams& params, double eta, MetaUpdate update) {
  require_positive(eta, "step size");
  const Point zero = Point::zeros(params.dim);
  return MetaState{zero, zero, zero, zero, eta, update, 0, 0.0, 0.0};
}

MetaRound meta_round(MetaState& s, const ValueFn& f, const BanditParams& params, Rng& rng) {
  require_same_dim(params.dim, s.w.dim(), "meta iterate");
  const std::size_t i = rng.index(params.dim);
  MetaRound round{s.w_hat, s.w_hat, 0.0, 0.0, i, Point::zeros(params.dim)};
  round.probe1[i] += params.delta;
  round.probe2[i] -= params.delta;
  require_probe(params.domain, round.probe1, params.r2);
  require_probe(params.domain, round.probe2, params.r2);
  round.value1 = f(round.probe1);
  round.value2 = f(round.probe2);
  const double v = (round.value1 - round.value2) / (2.0 * params.delta);
  const double step = static_cast<double>(params.dim) * (v - s.g_hat[i]);
  if (s.update == MetaUpdate::kUnbiased) {
    round.g = s.g_hat;
    round.g[i] += step;
    s.g_hat[i] = v;
  } else {
    round.g[i] = step;
    s.g_hat[i] += step;
  }

  s.sum_s += s.eta * squared_distance(round.g, s.g_prev);
  s.g_prev = round.g;

  Point w_next = s.w;
  w_next.axpy(-s.eta, round.g);
  s.w = project(params.shrunk, w_next);
  Point w_hat_next = s.w;
  w_hat_next.axpy(-s.eta, s.g_hat);
  w_hat_next = project(params.shrunk, w_hat_next);
  s.sum_what_moves += squared_distance(s.w_hat, w_hat_next);
  s.w_hat = std::move(w_hat_next);
  ++s.t;
  return round;
}

MetaRound meta_round(MetaState& state, const Loss& loss, const BanditParams& params, Rng& rng) {
  return meta_round(state, value_of(loss), params, rng);
}

double step_size_theorem4(double r, double path_budget, std::size_t horizon, double lipschitz, std::size_t dim) {
  require_positive(r, "r");
  if (!(path_budget >= 0.0)) throw InvalidArgument("B_T must be non-negative");
  if (horizon == 0 || dim == 0) throw InvalidArgument("T and d must be positive");
  require_positive(lipschitz, "G");
  const double d = static_cast<double>(dim);
  return std::sqrt((r * r + 2.0 * r * path_budget) /
                   (static_cast<double>(horizon) * lipschitz * lipschitz * d * d));
}

double regret_bound_theorem4(double r, double path_budget, double lipschitz, std::size_t dim, std::size_t horizon,
                             double r1, double r2) {
  const double d = static_cast<double>(dim);
  return std::sqrt((r * r + 2.0 * r * path_budget) * lipschitz * lipschitz * d * d * static_cast<double>(horizon)) +
         lipschitz * (3.0 * r1 + r2);
}

double step_size_theorem5(double r, double path_budget, double gradient_budget, std::size_t dim, double smoothness,
                          std::size_t horizon) {
  if (horizon < 2) throw InvalidArgument("theorem-5 step size needs T >= 2");
  require_positive(r, "r");
  if (!(path_budget >= 0.0)) throw InvalidArgument("B_T must be non-negative");
  require_positive(gradient_budget, "S_T");
  require_positive(smoothness, "smoothness L");
  if (dim == 0) throw InvalidArgument("d must be positive");
  const double d = static_cast<double>(dim);
  const double variation_term = std::sqrt((2.0 * r * path_budget + r * r) / (8.0 * gradient_budget * d * d * d * d));
  const double smooth_term =
      1.0 / (4.0 * smoothness * std::pow(d, 1.5) * std::sqrt(std::log(static_cast<double>(horizon))));
  return std::min(variation_term, smooth_term);
}

double smoothed_loss_value(const Loss& loss, const Point& w, double delta, std::size_t n_samples, Rng& rng) {
  if (n_samples == 0) throw InvalidArgument("smoothed loss needs at least one sample");
  require_same_dim(loss.dim(), w.dim(), "smoothed loss");
  double sum = 0.0;
  for (std::size_t k = 0; k < n_samples; ++k) sum += loss.value(w + delta * random_unit_vector(w.dim(), rng));
  return sum / static_cast<double>(n_samples);
}

}  // namespace dynregret
