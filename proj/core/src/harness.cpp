#include "dynregret/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "detail/overloaded.hpp"
#include "dynregret/error.hpp"
#include "dynregret/policies.hpp"
#include "dynregret/variations.hpp"

namespace dynregret {

namespace {

using detail::Overloaded;

constexpr double kRegretTolerance = 1e-9;
constexpr std::size_t kFullTraceLimit = 100000;

const char* rule_name(EtaRule rule) {
  switch (rule) {
    case EtaRule::kExplicit: return "explicit";
    case EtaRule::kTheorem1: return "thm1";
    case EtaRule::kTheorem3: return "thm3";
    case EtaRule::kTheorem4: return "thm4";
    case EtaRule::kTheorem5: return "thm5";
  }
  return "explicit";
}

EtaRule rule_from_name(const std::string& name) {
  if (name == "explicit") return EtaRule::kExplicit;
  if (name == "thm1") return EtaRule::kTheorem1;
  if (name == "thm3") return EtaRule::kTheorem3;
  if (name == "thm4") return EtaRule::kTheorem4;
  if (name == "thm5") return EtaRule::kTheorem5;
  throw InvalidArgument("unknown eta_rule '" + name + "'");
}

const StepRule* step_rule_of(const PolicySpec& policy) {
  return std::visit(Overloaded{[](const Ogd& p) -> const StepRule* { return &p.step; },
                               [](const BanditOgd& p) -> const StepRule* { return &p.step; },
                               [](const Meta& p) -> const StepRule* { return &p.step; },
                               [](const auto&) -> const StepRule* { return nullptr; }},
                    policy);
}

double feedback_lambda_sq(const FeedbackKind& feedback) {
  if (const auto* noisy = std::get_if<NoisyGradient>(&feedback)) return noisy->noise.lambda_sq();
  return 0.0;
}

}  // namespace

void check_compatible(const PolicySpec& policy, const FeedbackKind& feedback) {
  const bool ok = std::visit(
      Overloaded{[&](const FollowMinimizer&) { return std::holds_alternative<FullInformation>(feedback); },
                 [&](const Clairvoyant&) { return std::holds_alternative<FullInformation>(feedback); },
                 [&](const Ogd&) { return !std::holds_alternative<TwoPointBandit>(feedback); },
                 [&](const BanditOgd&) { return std::holds_alternative<TwoPointBandit>(feedback); },
                 [&](const Meta&) { return std::holds_alternative<TwoPointBandit>(feedback); }},
      policy);
  if (!ok) {
    throw InvalidArgument("policy " + policy_name(policy) + " cannot run with " + feedback_name(feedback) +
                          " feedback");
  }
}

namespace {

void require_rule_allowed(const PolicySpec& policy, EtaRule rule) {
  if (rule == EtaRule::kExplicit) return;
  const bool ok = std::visit(Overloaded{[&](const Ogd&) {
                                          return rule == EtaRule::kTheorem1 || rule == EtaRule::kTheorem3;
                                        },
                                        [&](const BanditOgd&) { return rule == EtaRule::kTheorem4; },
                                        [&](const Meta&) { return rule == EtaRule::kTheorem5; },
                                        [](const auto&) { return false; }},
                             policy);
  if (!ok) {
    throw InvalidArgument(std::string("eta_rule ") + rule_name(rule) + " does not apply to policy " +
                          policy_name(policy));
  }
}

double bandit_xi(const FeedbackKind& feedback, std::size_t horizon) {
  const auto& bandit = std::get<TwoPointBandit>(feedback);
  return bandit.xi ? *bandit.xi : 1.0 / static_cast<double>(horizon);
}

// Enforces the information a policy may receive under each feedback kind.
class FeedbackOracle {
 public:
  FeedbackOracle(const FeedbackKind& kind, FeedbackAudit& audit, Rng& noise_rng)
      : kind_(kind), audit_(audit), noise_rng_(noise_rng) {}

  void bind(const Loss& loss) {
    loss_ = &loss;
    values_this_round_ = 0;
  }

  double value(const Point& p) {
    if (std::holds_alternative<TwoPointBandit>(kind_)) {
      if (++values_this_round_ > 2) throw Error("two-point feedback allows two value queries per round");
    } else if (!std::holds_alternative<FullInformation>(kind_)) {
      deny("a loss value");
    }
    ++audit_.value_queries;
    return loss_->value(p);
  }

  Point gradient(const Point& w) {
    if (!std::holds_alternative<TrueGradient>(kind_) && !std::holds_alternative<FullInformation>(kind_)) {
      deny("an exact gradient");
    }
    ++audit_.gradient_queries;
    return loss_->gradient(w);
  }

  Point noisy_gradient(const Point& w) {
    const auto* noisy = std::get_if<NoisyGradient>(&kind_);
    if (noisy == nullptr) deny("a noisy gradient");
    ++audit_.noisy_gradient_queries;
    return dynregret::noisy_gradient(*loss_, w, noisy->noise, noise_rng_);
  }

  // first-order feedback of whichever kind this run uses
  Point first_order(const Point& w) {
    if (std::holds_alternative<NoisyGradient>(kind_)) return noisy_gradient(w);
    return gradient(w);
  }

  Point minimizer(const FeasibleSet& set) {
    if (!std::holds_alternative<FullInformation>(kind_)) deny("the minimizer");
    ++audit_.minimizer_queries;
    return loss_->minimizer(set);
  }

  ValueFn value_fn() {
    return [this](const Point& p) { return value(p); };
  }

 private:
  [[noreturn]] void deny(const char* what) const {
    throw Error(std::string("feedback ") + feedback_name(kind_) + " does not reveal " + what);
  }

  const FeedbackKind& kind_;
  FeedbackAudit& audit_;
  Rng& noise_rng_;
  const Loss* loss_ = nullptr;
  int values_this_round_ = 0;
};

template <class E>
[[noreturn]] void rethrow_at(const E& e, std::size_t round) {
  throw E("round " + std::to_string(round) + ": " + e.what());
}

struct Lemma1Tracker {
  bool enabled = false;
  double min_gap = std::numeric_limits<double>::infinity();
  double min_telescoped = std::numeric_limits<double>::infinity();
};

}  // namespace

std::string feedback_name(const FeedbackKind& feedback) {
  return std::visit(Overloaded{[](const FullInformation&) { return std::string("full_information"); },
                               [](const TrueGradient&) { return std::string("true_gradient"); },
                               [](const NoisyGradient&) { return std::string("noisy_gradient"); },
                               [](const TwoPointBandit&) { return std::string("two_point_bandit"); }},
                    feedback);
}

std::string policy_name(const PolicySpec& policy) {
  return std::visit(Overloaded{[](const FollowMinimizer&) { return std::string("follow_minimizer"); },
                               [](const Ogd&) { return std::string("ogd"); },
                               [](const BanditOgd&) { return std::string("bandit_ogd"); },
                               [](const Meta&) { return std::string("meta"); },
                               [](const Clairvoyant&) { return std::string("clairvoyant"); }},
                    policy);
}

StepResolution resolve_step_size(const PolicySpec& policy, const LossSequence& seq, const FeedbackKind& feedback) {
  StepResolution out;
  const StepRule* rule = step_rule_of(policy);
  out.r = (rule != nullptr && rule->r) ? *rule->r : diameter(seq.domain());
  if (!(out.r > 0.0)) throw InvalidArgument("r must be positive");
  if (rule == nullptr) return out;
  require_rule_allowed(policy, rule->rule);

  auto path_budget = [&]() {
    if (auto b = seq.declared_path_budget()) return *b;
    out.oracle_tuning = true;
    return path_variation(seq);
  };
  const std::size_t horizon = seq.size();
  switch (rule->rule) {
    case EtaRule::kExplicit:
      if (!(rule->eta > 0.0) || !std::isfinite(rule->eta)) throw InvalidArgument("step size eta must be positive");
      out.eta = rule->eta;
      break;
    case EtaRule::kTheorem1: {
      const auto l = seq.smoothness();
      if (!l || !(*l > 0.0)) throw InvalidArgument("thm1 step size needs a smooth sequence with L > 0");
      out.path_budget = path_budget();
      out.eta = step_size_theorem1(*l);
      break;
    }
    case EtaRule::kTheorem3:
      out.path_budget = path_budget();
      out.eta = step_size_theorem3(out.r, *out.path_budget, horizon, seq.lipschitz(), feedback_lambda_sq(feedback));
      break;
    case EtaRule::kTheorem4:
      out.path_budget = path_budget();
      out.eta = step_size_theorem4(out.r, *out.path_budget, horizon, seq.lipschitz(), seq.dim());
      break;
    case EtaRule::kTheorem5: {
      const auto l = seq.smoothness();
      if (!l || !(*l > 0.0)) throw InvalidArgument("thm5 step size needs a smooth sequence with L > 0");
      out.path_budget = path_budget();
      if (auto s = seq.declared_gradient_budget()) {
        out.gradient_budget = *s;
      } else {
        out.oracle_tuning = true;
        out.gradient_budget = gradient_variation(seq);
      }
      out.eta = step_size_theorem5(out.r, *out.path_budget, *out.gradient_budget, seq.dim(), *l, horizon);
      break;
    }
  }
  return out;
}

std::optional<double> applicable_bound(const PolicySpec& policy, const LossSequence& seq,
                                       const FeedbackKind& feedback, const StepResolution& step) {
  if (std::holds_alternative<FollowMinimizer>(policy)) {
    return full_information_bound(seq.lipschitz(), step.r, path_variation(seq));
  }
  const StepRule* rule = step_rule_of(policy);
  if (rule == nullptr || !step.path_budget) return std::nullopt;
  switch (rule->rule) {
    case EtaRule::kTheorem1:
      if (std::holds_alternative<NoisyGradient>(feedback)) return std::nullopt;
      return regret_bound_theorem1(*seq.smoothness(), step.r, *step.path_budget);
    case EtaRule::kTheorem3:
      return regret_bound_theorem3(step.r, *step.path_budget, seq.lipschitz(), feedback_lambda_sq(feedback),
                                   seq.size());
    case EtaRule::kTheorem4: {
      const auto& bandit = std::get<TwoPointBandit>(feedback);
      if (bandit.xi && *bandit.xi != 1.0 / static_cast<double>(seq.size())) return std::nullopt;
      const double r1 = inscribed_radius(seq.domain());
      const double r2 = circumscribed_radius(seq.domain());
      return regret_bound_theorem4(step.r, *step.path_budget, seq.lipschitz(), seq.dim(), seq.size(), r1, r2);
    }
    default:
      return std::nullopt;
  }
}

RunTrace run(const PolicySpec& policy, const LossSequence& seq, const FeedbackKind& feedback, std::uint64_t seed,
             const RunOptions& options) {
  check_compatible(policy, feedback);
  if (const auto* noisy = std::get_if<NoisyGradient>(&feedback)) {
    require_same_dim(seq.dim(), noisy->noise.dim(), "gradient noise");
  }
  const std::size_t horizon = seq.size();

  RunTrace trace;
  trace.step = resolve_step_size(policy, seq, feedback);
  trace.thin = options.thin != 0 ? options.thin
                                 : (horizon <= kFullTraceLimit ? 1 : (horizon + kFullTraceLimit - 1) / kFullTraceLimit);
  trace.config = {{"seed", seed},
                  {"policy", policy},
                  {"sequence", seq.descriptor()},
                  {"feedback", feedback},
                  {"eta", trace.step.eta}};
  if (options.record_rounds) trace.rounds.reserve(horizon / trace.thin + 1);

  Rng noise_rng(derive_seed(seed, Stream::kNoise));
  Rng direction_rng(derive_seed(seed, Stream::kDirection));
  FeedbackOracle oracle(feedback, trace.audit, noise_rng);

  const FeasibleSet& domain = seq.domain();
  std::optional<PolicyState> state;
  std::optional<BanditParams> bandit;
  std::optional<MetaState> meta;
  std::visit(Overloaded{[&](const FollowMinimizer& p) { state = make_policy_state(domain, 0.0, p.init); },
                        [&](const Ogd& p) { state = make_policy_state(domain, trace.step.eta, p.init); },
                        [&](const BanditOgd&) {
                          bandit = BanditParams::for_domain(domain, bandit_xi(feedback, horizon));
                          state = make_policy_state(bandit->shrunk, trace.step.eta);
                        },
                        [&](const Meta& p) {
                          bandit = BanditParams::for_domain(domain, bandit_xi(feedback, horizon));
                          meta = make_meta_state(*bandit, trace.step.eta, p.update);
                        },
                        [](const Clairvoyant&) {}},
             policy);

  Lemma1Tracker lemma1{options.lemma1 && std::holds_alternative<Ogd>(policy)};
  RunTotals& totals = trace.totals;
  totals.min_per_step_regret = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < horizon; ++i) {
    RoundRecord rec;
    rec.t = i + 1;
    try {
      const Loss& loss = seq.loss(i);
      rec.optimal_value = seq.optimal_value(i);
      oracle.bind(loss);
      std::visit(Overloaded{[&](const FollowMinimizer&) {
                              rec.decision = state->current;
                              rec.loss_value = loss.value(rec.decision);
                              state->current = oracle.minimizer(domain);
                              ++state->t;
                            },
                            [&](const Ogd&) {
                              rec.decision = state->current;
                              rec.loss_value = loss.value(rec.decision);
                              const Point g = oracle.first_order(rec.decision);
                              ogd_step(*state, g);
                              if (lemma1.enabled) {
                                const Point& ws = seq.minimizer(i);
                                const Point& ws_next = i + 1 < horizon ? seq.minimizer(i + 1) : ws;
                                rec.lemma1_gap = lemma1_gap(rec.decision, state->current, ws, ws_next, g,
                                                            trace.step.eta, trace.step.r);
                                rec.lemma1_gap_telescoped = lemma1_gap_telescoped(
                                    rec.decision, state->current, ws, ws_next, g, trace.step.eta, trace.step.r);
                                lemma1.min_gap = std::min(lemma1.min_gap, *rec.lemma1_gap);
                                lemma1.min_telescoped = std::min(lemma1.min_telescoped, *rec.lemma1_gap_telescoped);
                              }
                            },
                            [&](const BanditOgd&) {
                              rec.decision = state->current;
                              BanditRound r = bandit_ogd_round(*state, oracle.value_fn(), *bandit, direction_rng);
                              rec.loss_value = 0.5 * (r.value1 + r.value2);
                              rec.probes = {std::move(r.probe1), std::move(r.probe2)};
                            },
                            [&](const Meta&) {
                              rec.decision = meta->w_hat;
                              MetaRound r = meta_round(*meta, oracle.value_fn(), *bandit, direction_rng);
                              rec.loss_value = 0.5 * (r.value1 + r.value2);
                              rec.probes = {std::move(r.probe1), std::move(r.probe2)};
                            },
                            [&](const Clairvoyant&) {
                              rec.decision = oracle.minimizer(domain);
                              rec.loss_value = loss.value(rec.decision);
                            }},
                 policy);
    } catch (const Infeasible& e) {
      rethrow_at(e, rec.t);
    } catch (const DimensionMismatch& e) {
      rethrow_at(e, rec.t);
    } catch (const InvalidArgument& e) {
      rethrow_at(e, rec.t);
    } catch (const Unsupported& e) {
      rethrow_at(e, rec.t);
    } catch (const Error& e) {
      rethrow_at(e, rec.t);
    }

    rec.per_step_regret = rec.loss_value - rec.optimal_value;
    if (rec.per_step_regret < -kRegretTolerance) {
      throw Error("round " + std::to_string(rec.t) + ": decision beats the round minimizer by " +
                  std::to_string(-rec.per_step_regret));
    }
    totals.cumulative_loss += rec.loss_value;
    totals.cumulative_optimal += rec.optimal_value;
    totals.dynamic_regret += rec.per_step_regret;
    totals.min_per_step_regret = std::min(totals.min_per_step_regret, rec.per_step_regret);
    if (options.record_rounds && i % trace.thin == 0) trace.rounds.push_back(std::move(rec));
  }

  if (lemma1.enabled) {
    totals.min_lemma1_gap = lemma1.min_gap;
    totals.min_lemma1_gap_telescoped = lemma1.min_telescoped;
  }
  if (meta) {
    totals.meta_sum_s = meta->sum_s;
    totals.meta_sum_what_moves = meta->sum_what_moves;
  }
  if (options.static_grid != 0) totals.static_regret = static_regret(trace, seq, options.static_grid);
  return trace;
}

double static_regret(const RunTrace& trace, const LossSequence& seq, std::size_t grid) {
  if (seq.dim() > 2) throw Unsupported("static regret grid minimization supports d <= 2");
  const std::vector<Point> points = domain_grid(seq.domain(), grid);
  std::vector<double> counts(seq.distinct_count(), 0.0);
  for (std::size_t t = 0; t < seq.size(); ++t) counts[seq.distinct_index(t)] += 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Point& w : points) {
    double total = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] != 0.0) total += counts[k] * seq.distinct_loss(k).value(w);
    }
    best = std::min(best, total);
  }
  return trace.totals.cumulative_loss - best;
}

std::size_t worker_threads(std::size_t jobs) {
  std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DYNREGRET_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

MonteCarloSummary monte_carlo(const PolicySpec& policy, const SequenceGenerator& generate,
                              const FeedbackKind& feedback, std::size_t n_seeds, std::uint64_t base_seed) {
  if (n_seeds == 0) throw InvalidArgument("monte carlo needs at least one seed");
  MonteCarloSummary summary;
  summary.n_seeds = n_seeds;
  summary.base_seed = base_seed;
  summary.per_seed.assign(n_seeds, 0.0);
  std::vector<std::optional<double>> sum_s(n_seeds);
  std::vector<std::exception_ptr> errors(n_seeds);

  const RunOptions options{.record_rounds = false};
  auto job = [&](std::size_t k) {
    try {
      const std::uint64_t seed = base_seed + 1 + k;
      const LossSequence seq = generate(derive_seed(seed, Stream::kAdversary));
      const RunTrace trace = run(policy, seq, feedback, seed, options);
      summary.per_seed[k] = trace.totals.dynamic_regret;
      sum_s[k] = trace.totals.meta_sum_s;
      if (k == 0) {
        summary.step = trace.step;
        summary.bound = applicable_bound(policy, seq, feedback, trace.step);
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const std::size_t n_threads = worker_threads(n_seeds);
  if (n_threads == 1) {
    for (std::size_t k = 0; k < n_seeds; ++k) job(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < n_seeds; k = next++) job(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  double sum = 0.0;
  for (double v : summary.per_seed) sum += v;
  summary.mean_regret = sum / static_cast<double>(n_seeds);
  if (n_seeds > 1) {
    double sq = 0.0;
    for (double v : summary.per_seed) sq += (v - summary.mean_regret) * (v - summary.mean_regret);
    summary.std_error = std::sqrt(sq / static_cast<double>(n_seeds - 1) / static_cast<double>(n_seeds));
  }
  for (const auto& s : sum_s) {
    if (s) summary.meta_sum_s.push_back(*s);
  }
  return summary;
}

// JSON

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json step_rule_json(const StepRule& step) {
  nlohmann::json j = {{"eta_rule", rule_name(step.rule)}};
  if (step.rule == EtaRule::kExplicit) j["eta"] = step.eta;
  if (step.r) j["r"] = *step.r;
  return j;
}

StepRule step_rule_from_json(const nlohmann::json& j) {
  StepRule step;
  if (j.contains("eta")) {
    step.rule = EtaRule::kExplicit;
    step.eta = j.at("eta").get<double>();
    if (j.contains("eta_rule") && j.at("eta_rule").get<std::string>() != "explicit") {
      throw InvalidArgument("policy gives both eta and a non-explicit eta_rule");
    }
  } else if (j.contains("eta_rule")) {
    step.rule = rule_from_name(j.at("eta_rule").get<std::string>());
    if (step.rule == EtaRule::kExplicit) throw InvalidArgument("eta_rule explicit needs eta");
  } else {
    throw InvalidArgument("policy needs eta or eta_rule");
  }
  if (j.contains("r")) step.r = j.at("r").get<double>();
  return step;
}

std::optional<Point> init_from_json(const nlohmann::json& j) {
  if (!j.contains("init") || j.at("init").is_null()) return std::nullopt;
  const auto& v = j.at("init");
  if (v.is_number()) return Point{v.get<double>()};
  return Point(v.get<std::vector<double>>());
}

}  // namespace

void to_json(nlohmann::json& j, const FeedbackKind& feedback) {
  j = {{"type", feedback_name(feedback)}};
  if (const auto* noisy = std::get_if<NoisyGradient>(&feedback)) j["noise"] = noisy->noise;
  if (const auto* bandit = std::get_if<TwoPointBandit>(&feedback)) j["xi"] = optional_json(bandit->xi);
}

void to_json(nlohmann::json& j, const PolicySpec& policy) {
  j = {{"type", policy_name(policy)}};
  if (const StepRule* step = step_rule_of(policy)) j.update(step_rule_json(*step));
  auto init = std::visit(Overloaded{[](const FollowMinimizer& p) { return p.init; },
                                    [](const Ogd& p) { return p.init; },
                                    [](const auto&) { return std::optional<Point>{}; }},
                         policy);
  if (init) j["init"] = init->vector();
  if (const auto* meta = std::get_if<Meta>(&policy)) {
    j["update"] = meta->update == MetaUpdate::kUnbiased ? "unbiased" : "as_printed";
  }
}

void to_json(nlohmann::json& j, const StepResolution& step) {
  j = {{"eta", step.eta},
       {"r", step.r},
       {"B_T", optional_json(step.path_budget)},
       {"S_T", optional_json(step.gradient_budget)},
       {"oracle_tuning", step.oracle_tuning}};
}

void to_json(nlohmann::json& j, const RunTotals& totals) {
  j = {{"cumulative_loss", totals.cumulative_loss},
       {"cumulative_optimal", totals.cumulative_optimal},
       {"dynamic_regret", totals.dynamic_regret},
       {"static_regret", optional_json(totals.static_regret)},
       {"min_per_step_regret", totals.min_per_step_regret}};
  if (totals.min_lemma1_gap) j["min_lemma1_gap"] = *totals.min_lemma1_gap;
  if (totals.min_lemma1_gap_telescoped) j["min_lemma1_gap_telescoped"] = *totals.min_lemma1_gap_telescoped;
  if (totals.meta_sum_s) j["meta_sum_s"] = *totals.meta_sum_s;
  if (totals.meta_sum_what_moves) j["meta_sum_what_moves"] = *totals.meta_sum_what_moves;
}

void to_json(nlohmann::json& j, const FeedbackAudit& audit) {
  j = {{"value_queries", audit.value_queries},
       {"gradient_queries", audit.gradient_queries},
       {"noisy_gradient_queries", audit.noisy_gradient_queries},
       {"minimizer_queries", audit.minimizer_queries}};
}

void to_json(nlohmann::json& j, const MonteCarloSummary& summary) {
  j = {{"n_seeds", summary.n_seeds},
       {"base_seed", summary.base_seed},
       {"mean_regret", summary.mean_regret},
       {"std_error", summary.std_error},
       {"per_seed", summary.per_seed},
       {"bound", optional_json(summary.bound)},
       {"step", summary.step}};
}

FeedbackKind feedback_from_json(const nlohmann::json& j, std::size_t dim) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "full_information") return FullInformation{};
    if (type == "true_gradient") return TrueGradient{};
    if (type == "noisy_gradient") {
      nlohmann::json noise = j.at("noise");
      if (!noise.contains("d")) noise["d"] = dim;
      GaussianNoise parsed = gaussian_noise_from_json(noise);
      require_same_dim(dim, parsed.dim(), "noise descriptor");
      return NoisyGradient{parsed};
    }
    if (type == "two_point_bandit") {
      TwoPointBandit bandit;
      if (j.contains("xi") && !j.at("xi").is_null()) bandit.xi = j.at("xi").get<double>();
      return bandit;
    }
    throw InvalidArgument("unknown feedback type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed feedback descriptor: ") + e.what());
  }
}

PolicySpec policy_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "follow_minimizer") return FollowMinimizer{init_from_json(j)};
    if (type == "clairvoyant") return Clairvoyant{};
    if (type == "ogd") return Ogd{step_rule_from_json(j), init_from_json(j)};
    if (type == "bandit_ogd") return BanditOgd{step_rule_from_json(j)};
    if (type == "meta") {
      const auto update = j.value("update", std::string("unbiased"));
      if (update != "unbiased" && update != "as_printed") {
        throw InvalidArgument("meta update must be \"unbiased\" or \"as_printed\"");
      }
      return Meta{step_rule_from_json(j), update == "unbiased" ? MetaUpdate::kUnbiased : MetaUpdate::kAsPrinted};
    }
    throw InvalidArgument("unknown policy type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed policy descriptor: ") + e.what());
  }
}

}  // namespace dynregret
