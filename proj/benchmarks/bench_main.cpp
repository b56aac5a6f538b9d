#include <benchmark/benchmark.h>

#include "dynregret/bandit.hpp"
#include "dynregret/harness.hpp"
#include "dynregret/variations.hpp"

using namespace dynregret;

namespace {

void BM_ProjectBall(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const FeasibleSet ball = FeasibleSet::ball(Point::zeros(dim), 1.0);
  Rng rng(1);
  Point x = 3.0 * random_unit_vector(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(project(ball, x));
}
BENCHMARK(BM_ProjectBall)->Arg(1)->Arg(10)->Arg(100);

void BM_OgdRun(benchmark::State& state) {
  const auto horizon = static_cast<std::size_t>(state.range(0));
  const auto seq = make_random_sign_quadratic(horizon, 0.5, 3);
  const PolicySpec policy = Ogd{StepRule{EtaRule::kTheorem3, 0.0, std::nullopt}, std::nullopt};
  const FeedbackKind feedback = NoisyGradient{GaussianNoise(1, 1.0)};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(policy, seq, feedback, ++seed, RunOptions{.record_rounds = false}).totals);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_OgdRun)->Arg(10000)->Arg(100000);

void BM_TwoPointEstimate(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const FeasibleSet domain = FeasibleSet::ball(Point::zeros(dim), 1.0);
  const Loss loss(CenteredQuadratic{Point::zeros(dim)}, domain);
  Rng rng(2);
  const Point w = 0.5 * random_unit_vector(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_point_estimate(loss, w, random_unit_vector(dim, rng), 0.01, domain));
  }
}
BENCHMARK(BM_TwoPointEstimate)->Arg(2)->Arg(20);

void BM_MetaRound(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const FeasibleSet domain = FeasibleSet::ball(Point::zeros(dim), 1.0);
  const auto params = BanditParams::for_domain(domain, 1e-3);
  const Loss loss(CenteredQuadratic{0.3 * Point::unit(dim, 0)}, domain);
  auto meta = make_meta_state(params, 0.01);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(meta_round(meta, loss, params, rng));
}
BENCHMARK(BM_MetaRound)->Arg(2)->Arg(20);

void BM_FunctionalVariation(benchmark::State& state) {
  const auto seq = make_instance2(10000, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(functional_variation(seq, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FunctionalVariation)->Arg(1001)->Arg(10001);

}  // namespace
BENCHMARK_MAIN();
