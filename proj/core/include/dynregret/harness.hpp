#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynregret/bandit.hpp"
#include "dynregret/noise.hpp"
#include "dynregret/point.hpp"
#include "dynregret/sequences.hpp"

namespace dynregret {

// Feedback structures

struct FullInformation {};
struct TrueGradient {};
struct NoisyGradient {
  GaussianNoise noise;
};
/// Two loss values per round; xi defaults to 1/T.
struct TwoPointBandit {
  std::optional<double> xi;
};

using FeedbackKind = std::variant<FullInformation, TrueGradient, NoisyGradient, TwoPointBandit>;

std::string feedback_name(const FeedbackKind& feedback);

// Policies

enum class EtaRule { kExplicit, kTheorem1, kTheorem3, kTheorem4, kTheorem5 };

struct StepRule {
  EtaRule rule = EtaRule::kExplicit;
  double eta = 0.0;          // used when rule == kExplicit
  std::optional<double> r;   // overrides diameter(domain)
};

struct FollowMinimizer {
  std::optional<Point> init;
};
struct Ogd {
  StepRule step;
  std::optional<Point> init;
};
struct BanditOgd {
  StepRule step;
};
struct Meta {
  StepRule step;
  MetaUpdate update = MetaUpdate::kUnbiased;
};
/// Plays w*_t every round; a comparator for tests, FullInformation only.
struct Clairvoyant {};

using PolicySpec = std::variant<FollowMinimizer, Ogd, BanditOgd, Meta, Clairvoyant>;

std::string policy_name(const PolicySpec& policy);

/// Throws InvalidArgument if the policy cannot run under the feedback kind.
void check_compatible(const PolicySpec& policy, const FeedbackKind& feedback);

/// Step size and the constants it was computed from.
struct StepResolution {
  double eta = 0.0;
  double r = 0.0;
  std::optional<double> path_budget;
  std::optional<double> gradient_budget;
  // a budget came from the realized sequence rather than a declaration
  bool oracle_tuning = false;
};

/// Resolves the policy's step rule against the sequence and feedback. B_T and
/// S_T come from the declared budgets when present, else from the computed
/// variations (flagged as oracle tuning).
StepResolution resolve_step_size(const PolicySpec& policy, const LossSequence& seq, const FeedbackKind& feedback);

/// The theorem bound matching (policy, step rule, feedback), if any.
std::optional<double> applicable_bound(const PolicySpec& policy, const LossSequence& seq,
                                       const FeedbackKind& feedback, const StepResolution& step);

// Traces

/// Counts of queries the policy made through the feedback oracle.
struct FeedbackAudit {
  std::size_t value_queries = 0;
  std::size_t gradient_queries = 0;
  std::size_t noisy_gradient_queries = 0;
  std::size_t minimizer_queries = 0;
  friend bool operator==(const FeedbackAudit&, const FeedbackAudit&) = default;
};

struct RoundRecord {
  std::size_t t = 0;  // 1-based
  Point decision;
  std::vector<Point> probes;
  double loss_value = 0.0;
  double optimal_value = 0.0;
  double per_step_regret = 0.0;
  std::optional<double> lemma1_gap;
  std::optional<double> lemma1_gap_telescoped;
  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct RunTotals {
  double cumulative_loss = 0.0;
  double cumulative_optimal = 0.0;
  double dynamic_regret = 0.0;
  std::optional<double> static_regret;
  double min_per_step_regret = 0.0;
  std::optional<double> min_lemma1_gap;
  std::optional<double> min_lemma1_gap_telescoped;
  // META diagnostics
  std::optional<double> meta_sum_s;
  std::optional<double> meta_sum_what_moves;
  friend bool operator==(const RunTotals&, const RunTotals&) = default;
};

struct RunTrace {
  std::vector<RoundRecord> rounds;  // possibly thinned
  std::size_t thin = 1;
  RunTotals totals;
  FeedbackAudit audit;
  StepResolution step;
  nlohmann::json config;
};

struct RunOptions {
  bool record_rounds = true;
  /// Keep every k-th round; 0 picks 1 up to T = 10^5 and ceil(T / 10^5) above.
  std::size_t thin = 0;
  /// Evaluate the per-step Lemma-1 gaps (OGD policies).
  bool lemma1 = false;
  /// Grid resolution for the static regret; 0 skips it.
  std::size_t static_grid = 0;
};

/// Plays T rounds (decide, observe feedback, update) and returns the trace.
/// Deterministic given `seed`; noise and bandit directions use sub-streams of it.
RunTrace run(const PolicySpec& policy, const LossSequence& seq, const FeedbackKind& feedback, std::uint64_t seed,
             const RunOptions& options = {});

/// sum_t f_t(w_t) - min over the grid of sum_t f_t(w).
double static_regret(const RunTrace& trace, const LossSequence& seq, std::size_t grid);

// Monte-Carlo replication

using SequenceGenerator = std::function<LossSequence(std::uint64_t adversary_seed)>;

struct MonteCarloSummary {
  std::size_t n_seeds = 0;
  std::uint64_t base_seed = 0;
  double mean_regret = 0.0;
  double std_error = 0.0;
  std::vector<double> per_seed;
  std::optional<double> bound;
  StepResolution step;
  // per-seed META diagnostics, when the policy is META
  std::vector<double> meta_sum_s;
};

/// Runs seeds base_seed + 1 ... base_seed + n_seeds. The sequence of seed s is
/// generate(derive_seed(s, Stream::kAdversary)). Runs execute on up to
/// DYNREGRET_THREADS threads; the reduction is in seed order.
MonteCarloSummary monte_carlo(const PolicySpec& policy, const SequenceGenerator& generate,
                              const FeedbackKind& feedback, std::size_t n_seeds, std::uint64_t base_seed);

/// Number of worker threads for replications.
std::size_t worker_threads(std::size_t jobs);

// JSON

void to_json(nlohmann::json& j, const FeedbackKind& feedback);
void to_json(nlohmann::json& j, const PolicySpec& policy);
void to_json(nlohmann::json& j, const StepResolution& step);
void to_json(nlohmann::json& j, const RunTotals& totals);
void to_json(nlohmann::json& j, const FeedbackAudit& audit);
void to_json(nlohmann::json& j, const MonteCarloSummary& summary);

/// {type: full_information | true_gradient | noisy_gradient | two_point_bandit, noise?, xi?}
FeedbackKind feedback_from_json(const nlohmann::json& j, std::size_t dim);
/// {type: ogd | follow_minimizer | bandit_ogd | meta | clairvoyant, eta | eta_rule, r?, init?}
PolicySpec policy_from_json(const nlohmann::json& j);

}  // namespace dynregret
