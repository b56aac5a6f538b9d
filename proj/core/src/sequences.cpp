#include "dynregret/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dynregret/error.hpp"
#include "dynregret/rng.hpp"

namespace dynregret {

BatchSchedule::BatchSchedule(std::size_t horizon, std::size_t batch_size)
    : horizon_(horizon), batch_size_(batch_size) {
  if (horizon == 0) throw InvalidArgument("batch schedule horizon must be positive");
  if (batch_size == 0) throw InvalidArgument("batch size must be positive");
}

std::size_t BatchSchedule::end(std::size_t batch) const noexcept {
  return std::min((batch + 1) * batch_size_, horizon_);
}

struct LossSequence::State {
  FeasibleSet domain;
  std::size_t horizon;
  std::vector<Loss> distinct;
  std::vector<Point> minimizers;
  std::vector<double> optimal_values;
  IndexFn index;
  SequenceInfo info;
  double lipschitz = 0.0;
  std::optional<double> smoothness;
};

LossSequence::LossSequence(FeasibleSet domain, std::size_t horizon, std::vector<Loss> distinct, IndexFn index,
                           SequenceInfo info) {
  if (horizon == 0) throw InvalidArgument("sequence horizon must be positive");
  if (distinct.empty()) throw InvalidArgument("sequence needs at least one loss");
  if (!index) throw InvalidArgument("sequence needs an index function");
  auto state = std::make_shared<State>(State{std::move(domain), horizon, std::move(distinct), {}, {},
                                             std::move(index), std::move(info), 0.0, std::nullopt});
  bool smooth = true;
  double worst_l = 0.0;
  for (const Loss& loss : state->distinct) {
    require_same_dim(state->domain.dim(), loss.dim(), "sequence loss");
    Point w_star = loss.minimizer(state->domain);
    state->optimal_values.push_back(loss.value(w_star));
    state->minimizers.push_back(std::move(w_star));
    state->lipschitz = std::max(state->lipschitz, loss.lipschitz());
    if (auto l = loss.smoothness()) {
      worst_l = std::max(worst_l, *l);
    } else {
      smooth = false;
    }
  }
  if (smooth) state->smoothness = worst_l;
  state_ = std::move(state);
}

std::size_t LossSequence::size() const noexcept { return state_->horizon; }
std::size_t LossSequence::dim() const noexcept { return state_->domain.dim(); }
const FeasibleSet& LossSequence::domain() const noexcept { return state_->domain; }

std::size_t LossSequence::distinct_index(std::size_t round) const {
  if (round >= state_->horizon) throw InvalidArgument("round index past the horizon");
  const std::size_t k = state_->index(round);
  if (k >= state_->distinct.size()) throw Error("sequence index function out of range");
  return k;
}

const Loss& LossSequence::loss(std::size_t round) const { return state_->distinct[distinct_index(round)]; }
const Point& LossSequence::minimizer(std::size_t round) const {
  return state_->minimizers[distinct_index(round)];
}
double LossSequence::optimal_value(std::size_t round) const {
  return state_->optimal_values[distinct_index(round)];
}

std::size_t LossSequence::distinct_count() const noexcept { return state_->distinct.size(); }
const Loss& LossSequence::distinct_loss(std::size_t k) const { return state_->distinct.at(k); }
double LossSequence::lipschitz() const noexcept { return state_->lipschitz; }
std::optional<double> LossSequence::smoothness() const noexcept { return state_->smoothness; }
const SequenceInfo& LossSequence::info() const noexcept { return state_->info; }

LossSequence LossSequence::with_gradient_budget(double budget) const {
  if (!(budget >= 0.0)) throw InvalidArgument("gradient-variation budget must be non-negative");
  auto copy = std::make_shared<State>(*state_);
  copy->info.declared_gradient_budget = budget;
  return LossSequence(std::shared_ptr<const State>(std::move(copy)));
}

nlohmann::json LossSequence::descriptor() const {
  nlohmann::json j = {{"generator", info().generator}, {"params", info().params}, {"T", size()}};
  j["seed"] = info().seed ? nlohmann::json(*info().seed) : nlohmann::json(nullptr);
  return j;
}

namespace {

FeasibleSet instance_domain() { return FeasibleSet::interval(-1.0, 3.0); }

}  // namespace

LossSequence make_instance1(std::size_t horizon) {
  if (horizon < 2) throw InvalidArgument("instance 1 requires T >= 2");
  const FeasibleSet domain = instance_domain();
  const BatchSchedule batches(horizon, (horizon + 1) / 2);
  SequenceInfo info{"instance1", {}, std::nullopt, 1.0, std::nullopt};
  return LossSequence(domain, horizon, {Loss(HalfQuadratic{}, domain), Loss(ShiftedQuadratic{1.0}, domain)},
                      [batches](std::size_t t) { return batches.batch_of(t) % 2; }, std::move(info));
}

LossSequence make_instance2(std::size_t horizon, double c, std::optional<FeasibleSet> domain) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("instance 2 requires C > 0");
  const double t = static_cast<double>(horizon);
  if (!(t > 4.0 * c * c)) throw InvalidArgument("instance 2 requires T > 4 C^2");
  const FeasibleSet set = domain ? *domain : instance_domain();
  const double theta = c / std::sqrt(t);
  const auto batch = static_cast<std::size_t>(std::floor(1.0 + std::sqrt(t) / (2.0 * c)));
  const double alpha = 1.0 + std::pow(1.0 - 2.0 * theta, static_cast<double>(batch));
  const BatchSchedule batches(horizon, batch);
  SequenceInfo info{"instance2", {{"C", c}, {"domain", set}}, std::nullopt, 4.0 * c * std::sqrt(t), std::nullopt};
  return LossSequence(set, horizon, {Loss(HalfQuadratic{}, set), Loss(ShiftedQuadratic{alpha}, set)},
                      [batches](std::size_t r) { return batches.batch_of(r) % 2; }, std::move(info));
}

namespace {

void require_sign_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidArgument("random-sign sigma must lie in (0, 1)");
}

std::vector<Loss> sign_losses(double sigma, const FeasibleSet& domain) {
  return {Loss(CenteredQuadratic{Point{sigma}}, domain), Loss(CenteredQuadratic{Point{-sigma}}, domain)};
}

}  // namespace

LossSequence make_random_sign_quadratic(std::size_t horizon, double sigma, std::uint64_t seed) {
  require_sign_sigma(sigma);
  const FeasibleSet domain = FeasibleSet::interval(-1.0, 1.0);
  SequenceInfo info{"random_sign_quadratic",
                    {{"sigma", sigma}},
                    seed,
                    2.0 * sigma * static_cast<double>(horizon),
                    std::nullopt};
  return LossSequence(domain, horizon, sign_losses(sigma, domain),
                      [seed](std::size_t t) -> std::size_t { return counter_coin(seed, t) ? 0 : 1; },
                      std::move(info));
}

LossSequence make_random_sign_quadratic_from_signs(const std::vector<bool>& positive, double sigma) {
  require_sign_sigma(sigma);
  const FeasibleSet domain = FeasibleSet::interval(-1.0, 1.0);
  SequenceInfo info{"random_sign_quadratic",
                    {{"sigma", sigma}, {"signs", positive}},
                    std::nullopt,
                    2.0 * sigma * static_cast<double>(positive.size()),
                    std::nullopt};
  return LossSequence(domain, positive.size(), sign_losses(sigma, domain),
                      [positive](std::size_t t) -> std::size_t { return positive[t] ? 0 : 1; }, std::move(info));
}

std::size_t lower_bound_batch_size(std::size_t horizon, double path_budget, double gamma, double c_tilde) {
  const double t = static_cast<double>(horizon);
  if (horizon == 0) throw InvalidArgument("lower-bound sequence requires T >= 1");
  if (!(path_budget >= 1.0 && path_budget <= t)) throw InvalidArgument("lower-bound sequence requires 1 <= B_T <= T");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("lower-bound sequence requires gamma > 0");
  if (!(c_tilde > 0.0) || !std::isfinite(c_tilde)) throw InvalidArgument("lower-bound sequence requires C_tilde > 0");
  const double exponent = 2.0 * gamma + 1.0;
  const double raw = std::pow(std::pow(4.0, gamma) / (4.0 * c_tilde), 1.0 / exponent) *
                     std::pow(t / path_budget, 2.0 * gamma / exponent);
  const double rounded = std::max(std::ceil(raw), 1.0);
  return static_cast<std::size_t>(std::min(rounded, t));
}

LossSequence make_lower_bound_sequence(std::size_t horizon, double path_budget, double gamma, double c_tilde,
                                       std::uint64_t seed) {
  const std::size_t batch = lower_bound_batch_size(horizon, path_budget, gamma, c_tilde);
  const double delta = path_budget * static_cast<double>(batch) / (2.0 * static_cast<double>(horizon));
  if (!(delta < 0.25)) {
    throw InvalidArgument("lower-bound construction needs delta = B_T * batch / (2T) < 1/4, got " +
                          std::to_string(delta));
  }
  const FeasibleSet domain = FeasibleSet::interval(-0.5, 0.5);
  const BatchSchedule batches(horizon, batch);
  SequenceInfo info{"lower_bound",
                    {{"B_T", path_budget}, {"gamma", gamma}, {"C_tilde", c_tilde}, {"batch", batch}, {"delta", delta}},
                    seed,
                    path_budget,
                    std::nullopt};
  return LossSequence(
      domain, horizon, {Loss(LowerBoundF{delta, gamma}, domain), Loss(LowerBoundG{delta, gamma}, domain)},
      [batches, seed](std::size_t t) -> std::size_t { return counter_coin(seed, batches.batch_of(t)) ? 0 : 1; },
      std::move(info));
}

namespace {

nlohmann::json points_json(const std::vector<Point>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (const Point& p : points) out.push_back(p.vector());
  return out;
}

// Validates the centers against the domain and returns the length of the
// walk through them in order.
double center_path_length(const std::vector<Point>& centers, const FeasibleSet& domain, const char* what) {
  double length = 0.0;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    require_same_dim(domain.dim(), centers[k].dim(), what);
    if (!domain.contains(centers[k])) {
      throw Infeasible(std::string(what) + " " + std::to_string(k) + " is outside the domain");
    }
    if (k > 0) length += distance(centers[k - 1], centers[k]);
  }
  return length;
}

std::vector<Loss> centered_losses(const std::vector<Point>& centers, const FeasibleSet& domain) {
  std::vector<Loss> losses;
  losses.reserve(centers.size());
  for (const Point& c : centers) losses.emplace_back(CenteredQuadratic{c}, domain);
  return losses;
}

}  // namespace

LossSequence make_drifting_quadratic(std::size_t horizon, std::size_t dim, std::vector<Point> path,
                                     std::optional<FeasibleSet> domain) {
  if (dim == 0) throw InvalidArgument("drifting quadratic requires d >= 1");
  if (path.size() != horizon) throw InvalidArgument("drifting quadratic path length must equal T");
  const FeasibleSet set = domain ? *domain : FeasibleSet::cube(dim, -1.0, 1.0);
  require_same_dim(dim, set.dim(), "drifting quadratic domain");
  const double length = center_path_length(path, set, "drifting quadratic path point");
  SequenceInfo info{"drifting_quadratic", {{"path", points_json(path)}, {"domain", set}}, std::nullopt, length,
                    std::nullopt};
  return LossSequence(set, horizon, centered_losses(path, set), [](std::size_t t) { return t; }, std::move(info));
}

LossSequence make_piecewise_quadratic(std::size_t horizon, const std::vector<Point>& centers, FeasibleSet domain) {
  if (centers.empty()) throw InvalidArgument("piecewise quadratic needs at least one center");
  if (horizon < centers.size()) throw InvalidArgument("piecewise quadratic needs T >= number of centers");
  const double length = center_path_length(centers, domain, "piecewise quadratic center");
  SequenceInfo info{"piecewise_quadratic", {{"centers", points_json(centers)}, {"domain", domain}}, std::nullopt,
                    length, std::nullopt};
  const std::size_t k = centers.size();
  std::vector<Loss> losses = centered_losses(centers, domain);
  return LossSequence(std::move(domain), horizon, std::move(losses),
                      [k, horizon](std::size_t t) { return t * k / horizon; }, std::move(info));
}

LossSequence make_random_walk_quadratic(std::size_t horizon, FeasibleSet domain, double max_step,
                                        std::uint64_t seed) {
  if (!(max_step >= 0.0) || !std::isfinite(max_step)) throw InvalidArgument("random-walk step must be non-negative");
  if (horizon == 0) throw InvalidArgument("random walk requires T >= 1");
  const std::size_t dim = domain.dim();
  Rng rng(seed);
  std::vector<Point> path;
  path.reserve(horizon);
  Point c = project(domain, Point::zeros(dim));
  for (std::size_t t = 0; t < horizon; ++t) {
    if (t > 0) {
      const double radius = max_step * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
      c = project(domain, c + radius * random_unit_vector(dim, rng));
    }
    path.push_back(c);
  }
  const double length = center_path_length(path, domain, "random walk center");
  SequenceInfo info{"random_walk_quadratic", {{"step", max_step}, {"domain", domain}}, seed, length, std::nullopt};
  std::vector<Loss> losses = centered_losses(path, domain);
  return LossSequence(std::move(domain), horizon, std::move(losses), [](std::size_t t) { return t; },
                      std::move(info));
}

namespace {

template <class T>
T param(const nlohmann::json& params, const char* key) {
  if (!params.contains(key)) throw InvalidArgument(std::string("sequence descriptor is missing params.") + key);
  return params.at(key).get<T>();
}

Point point_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Point{j.get<double>()};
  return Point(j.get<std::vector<double>>());
}

}  // namespace

LossSequence sequence_from_descriptor(const nlohmann::json& descriptor, std::optional<std::size_t> horizon,
                                      std::optional<std::uint64_t> seed) {
  try {
    const auto generator = descriptor.at("generator").get<std::string>();
    const nlohmann::json params = descriptor.value("params", nlohmann::json::object());
    std::size_t t = 0;
    if (horizon) {
      t = *horizon;
    } else if (descriptor.contains("T")) {
      t = descriptor.at("T").get<std::size_t>();
    } else {
      throw InvalidArgument("sequence descriptor needs T");
    }
    std::uint64_t s = 0;
    if (seed) {
      s = *seed;
    } else if (descriptor.contains("seed") && !descriptor.at("seed").is_null()) {
      s = descriptor.at("seed").get<std::uint64_t>();
    }
    auto domain_param = [&]() -> std::optional<FeasibleSet> {
      if (!params.contains("domain")) return std::nullopt;
      return feasible_set_from_json(params.at("domain"));
    };

    LossSequence seq = [&]() -> LossSequence {
      if (generator == "instance1") return make_instance1(t);
      if (generator == "instance2") return make_instance2(t, param<double>(params, "C"), domain_param());
      if (generator == "random_sign_quadratic") return make_random_sign_quadratic(t, param<double>(params, "sigma"), s);
      if (generator == "lower_bound") {
        return make_lower_bound_sequence(t, param<double>(params, "B_T"), param<double>(params, "gamma"),
                                         param<double>(params, "C_tilde"), s);
      }
      if (generator == "drifting_quadratic") {
        std::vector<Point> path;
        for (const auto& p : params.at("path")) path.push_back(point_from_json(p));
        const std::size_t dim = path.empty() ? 1 : path.front().dim();
        return make_drifting_quadratic(t, dim, std::move(path), domain_param());
      }
      if (generator == "piecewise_quadratic") {
        std::vector<Point> centers;
        for (const auto& p : params.at("centers")) centers.push_back(point_from_json(p));
        auto domain = domain_param();
        if (!domain) throw InvalidArgument("piecewise_quadratic needs params.domain");
        return make_piecewise_quadratic(t, centers, *domain);
      }
      if (generator == "random_walk_quadratic") {
        auto domain = domain_param();
        if (!domain) throw InvalidArgument("random_walk_quadratic needs params.domain");
        return make_random_walk_quadratic(t, *domain, param<double>(params, "step"), s);
      }
      throw InvalidArgument("unknown sequence generator '" + generator + "'");
    }();
    if (params.contains("S_T")) seq = seq.with_gradient_budget(params.at("S_T").get<double>());
    return seq;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed sequence descriptor: ") + e.what());
  }
}

}  // namespace dynregret
