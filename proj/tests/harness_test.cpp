#include <cmath>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dynregret/error.hpp"
#include "dynregret/harness.hpp"
#include "dynregret/variations.hpp"

using namespace dynregret;

namespace {

Ogd ogd(double eta, std::optional<Point> init = std::nullopt) {
  return Ogd{StepRule{EtaRule::kExplicit, eta, std::nullopt}, std::move(init)};
}

Ogd ogd_rule(EtaRule rule) { return Ogd{StepRule{rule, 0.0, std::nullopt}, std::nullopt}; }

}  // namespace

TEST(Run, OgdOnInstance1HasRegretOne) {
  for (std::size_t horizon : {2, 3, 10, 1001}) {
    const auto trace = run(ogd(0.5, Point{0.0}), make_instance1(horizon), TrueGradient{}, 1);
    EXPECT_DOUBLE_EQ(trace.totals.dynamic_regret, 1.0) << horizon;
    EXPECT_EQ(trace.rounds.size(), horizon);
    EXPECT_EQ(trace.rounds.front().t, 1u);
  }
}

TEST(Run, FollowMinimizerWithinFullInformationBound) {
  const std::vector<LossSequence> seqs{make_instance1(100), make_instance2(1000, 1.0),
                                       make_random_sign_quadratic(500, 0.4, 3),
                                       make_random_walk_quadratic(500, FeasibleSet::cube(2, -1, 1), 0.1, 5)};
  for (const auto& seq : seqs) {
    const auto trace = run(FollowMinimizer{}, seq, FullInformation{}, 1);
    const double bound = full_information_bound(seq.lipschitz(), diameter(seq.domain()), path_variation(seq));
    EXPECT_LE(trace.totals.dynamic_regret, bound + 1e-9) << seq.info().generator;
  }
}

TEST(Run, ClairvoyantHasNoDynamicRegret) {
  const auto seq = make_instance2(1000, 1.0);
  const auto trace = run(Clairvoyant{}, seq, FullInformation{}, 1, RunOptions{.static_grid = 2001});
  EXPECT_EQ(trace.totals.dynamic_regret, 0.0);
  ASSERT_TRUE(trace.totals.static_regret.has_value());
  EXPECT_LE(*trace.totals.static_regret, 0.0);
}

TEST(Run, StaticRegretAtMostDynamicOnInstance1) {
  const auto seq = make_instance1(100);
  const auto trace = run(ogd(0.5, Point{0.0}), seq, TrueGradient{}, 1);
  EXPECT_LE(static_regret(trace, seq, 4001), trace.totals.dynamic_regret);
}

TEST(Run, ConstantSequenceStaticEqualsDynamic) {
  // grid step 0.001 contains the minimizer 0.25 exactly
  const auto seq = make_drifting_quadratic(50, 1, std::vector<Point>(50, Point{0.25}));
  const auto trace = run(ogd(0.3), seq, TrueGradient{}, 1);
  EXPECT_NEAR(static_regret(trace, seq, 2001), trace.totals.dynamic_regret, 1e-12);
}

TEST(Run, ReplayIsBitIdentical) {
  const auto seq = make_random_sign_quadratic(2000, 0.5, 11);
  const FeedbackKind noisy = NoisyGradient{GaussianNoise(1, 1.0)};
  const auto a = run(ogd_rule(EtaRule::kTheorem3), seq, noisy, 42, RunOptions{.lemma1 = true});
  const auto b = run(ogd_rule(EtaRule::kTheorem3), seq, noisy, 42, RunOptions{.lemma1 = true});
  EXPECT_EQ(a.rounds, b.rounds);
  EXPECT_EQ(a.totals, b.totals);
  EXPECT_EQ(a.config, b.config);
  const auto c = run(ogd_rule(EtaRule::kTheorem3), seq, noisy, 43);
  EXPECT_NE(a.totals.dynamic_regret, c.totals.dynamic_regret);
}

TEST(Run, TrueGradientAuditSeesOnlyGradients) {
  const auto trace = run(ogd(0.5), make_instance2(200, 1.0), TrueGradient{}, 1);
  EXPECT_EQ(trace.audit.gradient_queries, 200u);
  EXPECT_EQ(trace.audit.value_queries, 0u);
  EXPECT_EQ(trace.audit.minimizer_queries, 0u);
  EXPECT_EQ(trace.audit.noisy_gradient_queries, 0u);
}

TEST(Run, BanditAuditSeesTwoValuesPerRound) {
  const auto seq = make_instance2(500, 1.0, FeasibleSet::ball(Point{0.0}, 3.0));
  const auto trace = run(BanditOgd{StepRule{EtaRule::kTheorem4, 0.0, std::nullopt}}, seq, TwoPointBandit{}, 1);
  EXPECT_EQ(trace.audit.value_queries, 1000u);
  EXPECT_EQ(trace.audit.gradient_queries, 0u);
  EXPECT_EQ(trace.rounds.front().probes.size(), 2u);
  const auto& r = trace.rounds[7];
  const double avg = 0.5 * (seq.loss(7).value(r.probes[0]) + seq.loss(7).value(r.probes[1]));
  EXPECT_DOUBLE_EQ(r.loss_value, avg);
}

TEST(Run, IncompatiblePairsAreRejected) {
  const auto seq = make_instance1(10);
  EXPECT_THROW(run(FollowMinimizer{}, seq, TrueGradient{}, 1), InvalidArgument);
  EXPECT_THROW(run(ogd(0.5), seq, TwoPointBandit{}, 1), InvalidArgument);
  EXPECT_THROW(run(Meta{}, seq, TrueGradient{}, 1), InvalidArgument);
  EXPECT_THROW(check_compatible(BanditOgd{}, NoisyGradient{GaussianNoise(1, 1.0)}), InvalidArgument);
  EXPECT_THROW(run(Ogd{StepRule{EtaRule::kTheorem5, 0, std::nullopt}, std::nullopt}, seq, TrueGradient{}, 1),
               InvalidArgument);
}

TEST(Run, RoundIndexIsAttachedToErrors) {
  const FeasibleSet domain = FeasibleSet::interval(-1, 1);
  const LossSequence seq(domain, 5, {Loss(CenteredQuadratic{Point{0.0}}, domain)},
                         [](std::size_t t) -> std::size_t { return t < 2 ? 0 : 7; },
                         SequenceInfo{"custom", {}, std::nullopt, std::nullopt, std::nullopt});
  try {
    run(ogd(0.5), seq, TrueGradient{}, 1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()).rfind("round 3: ", 0), 0u) << e.what();
  }
}

TEST(Run, LemmaGapsAreCertified) {
  const auto trace = run(ogd_rule(EtaRule::kTheorem1), make_instance2(2000, 1.0), TrueGradient{}, 1,
                         RunOptions{.lemma1 = true});
  ASSERT_TRUE(trace.totals.min_lemma1_gap.has_value());
  EXPECT_GE(*trace.totals.min_lemma1_gap, -1e-9);
  EXPECT_GE(*trace.totals.min_lemma1_gap_telescoped, -1e-9);
}

TEST(Run, ThinningKeepsTotalsExact) {
  const auto seq = make_random_sign_quadratic(1000, 0.5, 2);
  const auto full = run(ogd(0.1), seq, TrueGradient{}, 1);
  const auto thin = run(ogd(0.1), seq, TrueGradient{}, 1, RunOptions{.thin = 7});
  EXPECT_EQ(full.totals, thin.totals);
  EXPECT_EQ(thin.thin, 7u);
  EXPECT_EQ(thin.rounds.size(), (1000 + 6) / 7);
  EXPECT_EQ(thin.rounds[1], full.rounds[7]);
  EXPECT_EQ(run(ogd(0.1), seq, TrueGradient{}, 1, RunOptions{.record_rounds = false}).rounds.size(), 0u);
}

TEST(StepResolution, DeclaredBudgetsWinOverRealized) {
  const auto declared = resolve_step_size(ogd_rule(EtaRule::kTheorem3), make_instance2(10000, 1.0), TrueGradient{});
  EXPECT_FALSE(declared.oracle_tuning);
  EXPECT_DOUBLE_EQ(*declared.path_budget, 400.0);
  const FeasibleSet domain = FeasibleSet::interval(-1, 1);
  const LossSequence custom(domain, 4, {Loss(CenteredQuadratic{Point{0.0}}, domain), Loss(CenteredQuadratic{Point{0.5}}, domain)},
                            [](std::size_t t) { return t % 2; },
                            SequenceInfo{"custom", {}, std::nullopt, std::nullopt, std::nullopt});
  const auto realized = resolve_step_size(ogd_rule(EtaRule::kTheorem3), custom, TrueGradient{});
  EXPECT_TRUE(realized.oracle_tuning);
  EXPECT_DOUBLE_EQ(*realized.path_budget, 1.5);
}

TEST(ApplicableBound, MatchesTheoremHypotheses) {
  const auto seq = make_instance1(100);
  const auto step1 = resolve_step_size(ogd_rule(EtaRule::kTheorem1), seq, TrueGradient{});
  EXPECT_EQ(applicable_bound(ogd_rule(EtaRule::kTheorem1), seq, TrueGradient{}, step1), 96.0);
  const FeedbackKind noisy = NoisyGradient{GaussianNoise(1, 1.0)};
  EXPECT_FALSE(applicable_bound(ogd_rule(EtaRule::kTheorem1), seq, noisy, step1).has_value());
  EXPECT_FALSE(applicable_bound(ogd(0.5), seq, TrueGradient{}, resolve_step_size(ogd(0.5), seq, TrueGradient{})));
}

TEST(MonteCarlo, DeterministicPolicyHasZeroSpread) {
  const auto summary = monte_carlo(ogd(0.5, Point{0.0}), [](std::uint64_t) { return make_instance1(50); },
                                   TrueGradient{}, 8, 100);
  EXPECT_EQ(summary.n_seeds, 8u);
  EXPECT_EQ(summary.mean_regret, 1.0);
  EXPECT_EQ(summary.std_error, 0.0);
  for (double r : summary.per_seed) EXPECT_EQ(r, 1.0);
}

TEST(MonteCarlo, MatchesIndividualRunsInSeedOrder) {
  const FeedbackKind noisy = NoisyGradient{GaussianNoise(1, 1.0)};
  const auto generate = [](std::uint64_t s) { return make_random_sign_quadratic(500, 0.5, s); };
  const auto summary = monte_carlo(ogd_rule(EtaRule::kTheorem3), generate, noisy, 6, 20);
  double sum = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    const std::uint64_t seed = 21 + k;
    const auto trace = run(ogd_rule(EtaRule::kTheorem3), generate(derive_seed(seed, Stream::kAdversary)), noisy, seed,
                           RunOptions{.record_rounds = false});
    EXPECT_EQ(summary.per_seed[k], trace.totals.dynamic_regret);
    sum += trace.totals.dynamic_regret;
  }
  EXPECT_NEAR(summary.mean_regret, sum / 6.0, 1e-12);
  EXPECT_GT(summary.std_error, 0.0);
}

TEST(Json, PolicyAndFeedbackRoundTrip) {
  const std::vector<PolicySpec> policies{FollowMinimizer{}, ogd(0.5, Point{1.0}), ogd_rule(EtaRule::kTheorem3),
                                         BanditOgd{StepRule{EtaRule::kTheorem4, 0, 2.0}},
                                         Meta{StepRule{EtaRule::kTheorem5, 0, std::nullopt}, MetaUpdate::kAsPrinted},
                                         Clairvoyant{}};
  for (const auto& p : policies) {
    const nlohmann::json j = p;
    EXPECT_EQ(nlohmann::json(policy_from_json(j)), j);
  }
  const std::vector<FeedbackKind> feedback{FullInformation{}, TrueGradient{}, NoisyGradient{GaussianNoise(2, 0.5)},
                                           TwoPointBandit{0.01}};
  for (const auto& f : feedback) {
    const nlohmann::json j = f;
    EXPECT_EQ(nlohmann::json(feedback_from_json(j, 2)), j);
  }
  EXPECT_THROW(policy_from_json({{"type", "sgd"}}), InvalidArgument);
  EXPECT_THROW(feedback_from_json({{"type", "noisy_gradient"}, {"noise", {{"type", "gaussian"}, {"sigma", 1}, {"d", 3}}}}, 2),
               DimensionMismatch);
}
