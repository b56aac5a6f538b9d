#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynregret/geometry.hpp"
#include "dynregret/losses.hpp"

namespace dynregret {

/// Partition of rounds {0, ..., T-1} into consecutive batches of `batch_size`
/// (the last batch may be shorter). Rounds and batches are 0-based.
class BatchSchedule {
 public:
  BatchSchedule(std::size_t horizon, std::size_t batch_size);

  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t batch_size() const noexcept { return batch_size_; }
  std::size_t num_batches() const noexcept { return (horizon_ + batch_size_ - 1) / batch_size_; }
  std::size_t batch_of(std::size_t round) const noexcept { return round / batch_size_; }
  std::size_t begin(std::size_t batch) const noexcept { return batch * batch_size_; }
  std::size_t end(std::size_t batch) const noexcept;
  bool is_batch_start(std::size_t round) const noexcept { return round % batch_size_ == 0; }

 private:
  std::size_t horizon_;
  std::size_t batch_size_;
};

/// Provenance and declared budgets attached to a sequence.
struct SequenceInfo {
  std::string generator;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::optional<double> declared_path_budget;      // B_T
  std::optional<double> declared_gradient_budget;  // S_T
};

/// An oblivious adversary: T losses over one domain.
///
/// Losses are not stored per round. A sequence holds its distinct losses and
/// a pure function round -> distinct index, so generators with T = 10^7 cost
/// O(#distinct) memory. Copies share the immutable state.
class LossSequence {
 public:
  using IndexFn = std::function<std::size_t(std::size_t)>;

  LossSequence(FeasibleSet domain, std::size_t horizon, std::vector<Loss> distinct, IndexFn index,
               SequenceInfo info);

  std::size_t size() const noexcept;
  std::size_t dim() const noexcept;
  const FeasibleSet& domain() const noexcept;

  /// Loss of 0-based round `round`.
  const Loss& loss(std::size_t round) const;
  /// Canonical minimizer of round `round`.
  const Point& minimizer(std::size_t round) const;
  double optimal_value(std::size_t round) const;

  std::size_t distinct_count() const noexcept;
  std::size_t distinct_index(std::size_t round) const;
  const Loss& distinct_loss(std::size_t k) const;

  /// max over rounds of G.
  double lipschitz() const noexcept;
  /// max over rounds of L; empty if any loss is non-smooth.
  std::optional<double> smoothness() const noexcept;

  const SequenceInfo& info() const noexcept;
  std::optional<double> declared_path_budget() const noexcept { return info().declared_path_budget; }
  std::optional<double> declared_gradient_budget() const noexcept { return info().declared_gradient_budget; }
  std::optional<std::uint64_t> seed() const noexcept { return info().seed; }

  /// Copy with the declared gradient-variation budget replaced.
  LossSequence with_gradient_budget(double budget) const;

  /// {generator, params, seed, T}
  nlohmann::json descriptor() const;

 private:
  struct State;
  explicit LossSequence(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  std::shared_ptr<const State> state_;
};

/// Two batches of size ceil(T/2): g1 then g2 with alpha = 1, on [-1, 3].
LossSequence make_instance1(std::size_t horizon);

/// Batches of floor(1 + sqrt(T)/(2C)) alternating g1 / g2(alpha) with
/// alpha = 1 + (1 - 2C/sqrt(T))^batch; requires T > 4C^2. The default domain
/// is [-1, 3]; any one-dimensional domain containing 0 and alpha is accepted.
LossSequence make_instance2(std::size_t horizon, double c, std::optional<FeasibleSet> domain = std::nullopt);

/// 0.5 (w - eps_t)^2 with eps_t = +-sigma iid fair coins, on [-1, 1].
LossSequence make_random_sign_quadratic(std::size_t horizon, double sigma, std::uint64_t seed);

/// Same family with an explicit sign pattern (true = +sigma).
LossSequence make_random_sign_quadratic_from_signs(const std::vector<bool>& positive, double sigma);

/// Batch length used by make_lower_bound_sequence:
/// max(ceil((4^g/(4 C))^(1/(2g+1)) (T/B)^(2g/(2g+1))), 1).
std::size_t lower_bound_batch_size(std::size_t horizon, double path_budget, double gamma, double c_tilde);

/// Batches of lower_bound_batch_size, each holding LowerBoundF or LowerBoundG
/// (fair coin per batch) with delta = B * batch / (2T), on [-1/2, 1/2].
LossSequence make_lower_bound_sequence(std::size_t horizon, double path_budget, double gamma, double c_tilde,
                                       std::uint64_t seed);

/// CenteredQuadratic(path[t]); declared B_T is the path length. The domain
/// defaults to [-1, 1]^d.
LossSequence make_drifting_quadratic(std::size_t horizon, std::size_t dim, std::vector<Point> path,
                                     std::optional<FeasibleSet> domain = std::nullopt);

/// Drifting quadratic whose center visits `centers` in T/len(centers)
/// equal blocks; the path length is independent of T.
LossSequence make_piecewise_quadratic(std::size_t horizon, const std::vector<Point>& centers, FeasibleSet domain);

/// Drifting quadratic whose center performs a projected random walk with
/// steps uniform in the ball of radius `max_step`.
LossSequence make_random_walk_quadratic(std::size_t horizon, FeasibleSet domain, double max_step,
                                        std::uint64_t seed);

/// Builds a sequence from {generator, params, seed, T}; `horizon` and `seed`
/// override the descriptor's values when given.
LossSequence sequence_from_descriptor(const nlohmann::json& descriptor,
                                      std::optional<std::size_t> horizon = std::nullopt,
                                      std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace dynregret
