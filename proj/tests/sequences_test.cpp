#include <cmath>

#include <gtest/gtest.h>

#include "dynregret/error.hpp"
#include "dynregret/sequences.hpp"
#include "dynregret/variations.hpp"

using namespace dynregret;

namespace {

std::vector<double> minimizers(const LossSequence& seq) {
  std::vector<double> out;
  for (std::size_t t = 0; t < seq.size(); ++t) out.push_back(seq.minimizer(t)[0]);
  return out;
}

bool is_half_quadratic(const LossSequence& seq, std::size_t t) {
  return std::holds_alternative<HalfQuadratic>(seq.loss(t).family());
}

}  // namespace

TEST(BatchSchedule, CoversEveryRoundOnce) {
  for (std::size_t horizon : {1, 7, 100, 101}) {
    for (std::size_t batch : {1, 3, 6, 200}) {
      const BatchSchedule s(horizon, batch);
      std::vector<int> hits(horizon, 0);
      for (std::size_t j = 0; j < s.num_batches(); ++j) {
        for (std::size_t t = s.begin(j); t < s.end(j); ++t) {
          ++hits[t];
          ASSERT_EQ(s.batch_of(t), j);
        }
      }
      for (int h : hits) ASSERT_EQ(h, 1);
    }
  }
}

TEST(Instance1, FourRounds) {
  const auto seq = make_instance1(4);
  EXPECT_EQ(minimizers(seq), (std::vector<double>{0, 0, 1, 1}));
  EXPECT_TRUE(is_half_quadratic(seq, 1));
  EXPECT_FALSE(is_half_quadratic(seq, 2));
  EXPECT_EQ(path_variation(seq), 1.0);
  EXPECT_EQ(seq.declared_path_budget(), 1.0);
}

TEST(Instance1, OddAndMinimalHorizons) {
  EXPECT_EQ(minimizers(make_instance1(5)), (std::vector<double>{0, 0, 0, 1, 1}));
  EXPECT_EQ(minimizers(make_instance1(2)), (std::vector<double>{0, 1}));
  EXPECT_THROW(make_instance1(1), InvalidArgument);
}

TEST(Instance2, HundredRounds) {
  const auto seq = make_instance2(100, 1.0);
  EXPECT_NEAR(seq.distinct_loss(1).minimizer()[0], 1.262144, 1e-12);
  for (std::size_t t = 0; t < 100; ++t) ASSERT_EQ(is_half_quadratic(seq, t), (t / 6) % 2 == 0) << t;
}

TEST(Instance2, AlphaRangeAndPathBudget) {
  for (std::size_t horizon : {5, 17, 100, 10000, 123457}) {
    for (double c : {0.5, 1.0, 1.1}) {
      if (static_cast<double>(horizon) <= 4 * c * c) continue;
      const auto seq = make_instance2(horizon, c);
      const double alpha = seq.distinct_loss(1).minimizer()[0];
      ASSERT_GE(alpha, 1.0);
      ASSERT_LE(alpha, 2.0);
      ASSERT_LE(path_variation(seq), 4.0 * c * std::sqrt(static_cast<double>(horizon)) + 1e-9);
    }
  }
}

TEST(Instance2, RequiresLargeHorizon) {
  EXPECT_THROW(make_instance2(4, 1.0), InvalidArgument);
  EXPECT_THROW(make_instance2(100, 0.0), InvalidArgument);
  EXPECT_NO_THROW(make_instance2(5, 1.0));
}

TEST(RandomSign, ConstantSignsHaveNoVariation) {
  EXPECT_EQ(path_variation(make_random_sign_quadratic_from_signs(std::vector<bool>(50, true), 0.5)), 0.0);
}

TEST(RandomSign, AlternatingSigns) {
  std::vector<bool> signs;
  for (int t = 0; t < 40; ++t) signs.push_back(t % 2 == 0);
  EXPECT_DOUBLE_EQ(path_variation(make_random_sign_quadratic_from_signs(signs, 0.5)), 39.0);
}

TEST(RandomSign, WithinDeclaredBudgetAndDeterministic) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = make_random_sign_quadratic(1000, 0.3, seed);
    const auto b = make_random_sign_quadratic(1000, 0.3, seed);
    ASSERT_LE(path_variation(a), *a.declared_path_budget() + 1e-9);
    for (std::size_t t = 0; t < 1000; ++t) ASSERT_EQ(a.distinct_index(t), b.distinct_index(t));
  }
  EXPECT_THROW(make_random_sign_quadratic(10, 1.0, 1), InvalidArgument);
  EXPECT_THROW(make_random_sign_quadratic(10, 0.0, 1), InvalidArgument);
}

TEST(LowerBound, BatchAndDeltaOracle) {
  // (4 / 2)^(1/3) * 1000^(2/3) = 125.99 -> 126; delta = 10 * 126 / 20000
  EXPECT_EQ(lower_bound_batch_size(10000, 10.0, 1.0, 0.5), 126u);
  const auto seq = make_lower_bound_sequence(10000, 10.0, 1.0, 0.5, 3);
  EXPECT_DOUBLE_EQ(seq.info().params.at("delta").get<double>(), 0.063);
}

TEST(LowerBound, VariationWithinBudget) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    for (double gamma : {0.5, 1.0, 2.0}) {
      const auto seq = make_lower_bound_sequence(5000, 8.0, gamma, 0.5, seed);
      const std::size_t batch = seq.info().params.at("batch").get<std::size_t>();
      const double delta = seq.info().params.at("delta").get<double>();
      const double m = std::ceil(5000.0 / static_cast<double>(batch));
      const double vp = path_variation(seq);
      ASSERT_LE(vp, (m - 1.0) * 2.0 * delta + 1e-12);
      ASSERT_LE(vp, 8.0 + 1e-9);
    }
  }
}

TEST(LowerBound, MinimizersAreTwoDeltaApart) {
  const auto seq = make_lower_bound_sequence(10000, 10.0, 1.0, 0.5, 1);
  ASSERT_EQ(seq.distinct_count(), 2u);
  EXPECT_DOUBLE_EQ(distance(seq.distinct_loss(0).minimizer(), seq.distinct_loss(1).minimizer()), 2 * 0.063);
}

TEST(LowerBound, LeavingValidityRegionIsAnError) {
  EXPECT_THROW(make_lower_bound_sequence(100, 90.0, 1.0, 0.5, 1), InvalidArgument);
  EXPECT_THROW(lower_bound_batch_size(100, 0.5, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(lower_bound_batch_size(100, 10, 0.0, 0.5), InvalidArgument);
}

TEST(LowerBound, HoldsOneFunctionPerBatch) {
  const auto seq = make_lower_bound_sequence(10000, 10.0, 1.0, 0.5, 9);
  const BatchSchedule batches(10000, 126);
  for (std::size_t t = 0; t < 10000; ++t) {
    ASSERT_EQ(seq.distinct_index(t), seq.distinct_index(batches.begin(batches.batch_of(t))));
  }
}

TEST(DriftingQuadratic, Examples) {
  EXPECT_EQ(make_drifting_quadratic(3, 1, {Point{0.2}, Point{0.2}, Point{0.2}}).declared_path_budget(), 0.0);
  EXPECT_EQ(make_drifting_quadratic(3, 1, {Point{0.0}, Point{1.0}, Point{0.0}}).declared_path_budget(), 2.0);
  const auto seq = make_drifting_quadratic(3, 2, {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}});
  EXPECT_EQ(seq.declared_path_budget(), 2.0);
  EXPECT_EQ(path_variation(seq), 2.0);
}

TEST(DriftingQuadratic, RejectsInfeasiblePath) {
  EXPECT_THROW(make_drifting_quadratic(2, 1, {Point{0.0}, Point{1.5}}), Infeasible);
  EXPECT_THROW(make_drifting_quadratic(3, 1, {Point{0.0}, Point{0.5}}), InvalidArgument);
}

TEST(PiecewiseQuadratic, FixedPathAcrossHorizons) {
  const std::vector<Point> centers{Point{-0.5}, Point{0.5}, Point{-0.5}};
  for (std::size_t horizon : {3, 100, 100000}) {
    const auto seq = make_piecewise_quadratic(horizon, centers, FeasibleSet::interval(-1, 1));
    EXPECT_EQ(path_variation(seq), 2.0);
    EXPECT_EQ(seq.declared_path_budget(), 2.0);
  }
}

TEST(RandomWalk, StaysFeasibleAndDeclaresItsLength) {
  const auto seq = make_random_walk_quadratic(2000, FeasibleSet::cube(5, -1, 1), 0.05, 4);
  for (std::size_t t = 1; t < seq.size(); ++t) ASSERT_LE(distance(seq.minimizer(t - 1), seq.minimizer(t)), 0.05);
  EXPECT_NEAR(path_variation(seq), *seq.declared_path_budget(), 1e-9);
}

TEST(Descriptor, RoundTripsEveryGenerator) {
  const std::vector<LossSequence> seqs{
      make_instance1(10),
      make_instance2(1000, 1.0),
      make_random_sign_quadratic(300, 0.3, 77),
      make_lower_bound_sequence(1000, 5.0, 1.0, 0.5, 5),
      make_drifting_quadratic(3, 2, {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}}),
      make_piecewise_quadratic(50, {Point{0.1, 0.2}, Point{-0.3, 0.0}}, FeasibleSet::ball(Point{0.0, 0.0}, 1.0)),
      make_random_walk_quadratic(200, FeasibleSet::cube(2, -1, 1), 0.1, 8)};
  for (const auto& seq : seqs) {
    const auto copy = sequence_from_descriptor(seq.descriptor());
    ASSERT_EQ(copy.size(), seq.size());
    for (std::size_t t = 0; t < seq.size(); ++t) ASSERT_EQ(copy.loss(t), seq.loss(t)) << seq.info().generator;
  }
  EXPECT_THROW(sequence_from_descriptor({{"generator", "nope"}, {"T", 3}}), InvalidArgument);
  EXPECT_THROW(sequence_from_descriptor({{"generator", "instance1"}}), InvalidArgument);
}

TEST(Sequence, ExposesConstants) {
  const auto seq = make_instance2(10000, 1.0);
  EXPECT_EQ(seq.smoothness(), 2.0);
  EXPECT_DOUBLE_EQ(seq.lipschitz(), 6.0);
  EXPECT_FALSE(make_lower_bound_sequence(1000, 5.0, 0.5, 0.5, 1).smoothness().has_value());
  EXPECT_THROW(seq.loss(10000), InvalidArgument);
  EXPECT_EQ(seq.with_gradient_budget(4.0).declared_gradient_budget(), 4.0);
}
