#include <cmath>

#include <gtest/gtest.h>

#include "dynregret/error.hpp"
#include "dynregret/policies.hpp"

using namespace dynregret;

namespace {

const FeasibleSet kOmega = FeasibleSet::interval(-1.0, 3.0);

}  // namespace

TEST(StepSizeTheorem1, Examples) {
  EXPECT_EQ(step_size_theorem1(2.0), 0.25);
  EXPECT_EQ(step_size_theorem1(1.0), 0.5);
  EXPECT_EQ(step_size_theorem1(0.5), 1.0);
  EXPECT_THROW(step_size_theorem1(0.0), InvalidArgument);
  EXPECT_THROW(step_size_theorem1(-1.0), InvalidArgument);
}

TEST(StepSizeTheorem3, Examples) {
  EXPECT_DOUBLE_EQ(step_size_theorem3(1, 0, 100, 1, 0), 0.1);
  EXPECT_NEAR(step_size_theorem3(4, 1, 10000, 6, 0), 0.008164965809277261, 1e-17);
  EXPECT_DOUBLE_EQ(step_size_theorem3(2, 3, 500, 1.5, 0.4) / step_size_theorem3(2, 3, 1000, 1.5, 0.4), std::sqrt(2.0));
  EXPECT_THROW(step_size_theorem3(0, 1, 10, 1, 0), InvalidArgument);
  EXPECT_THROW(step_size_theorem3(1, 1, 0, 1, 0), InvalidArgument);
  EXPECT_THROW(step_size_theorem3(1, 1, 10, 0, 0), InvalidArgument);
}

TEST(Bounds, Examples) {
  EXPECT_EQ(regret_bound_theorem1(2, 4, 1), 96.0);
  EXPECT_EQ(regret_bound_theorem1(2, 4, 0), 64.0);
  EXPECT_DOUBLE_EQ(regret_bound_theorem3(1, 0, 1, 0, 100), 10.0);
  EXPECT_DOUBLE_EQ(regret_bound_theorem3(4, 2, 6, 1, 40000) / regret_bound_theorem3(4, 2, 6, 1, 10000), 2.0);
  EXPECT_DOUBLE_EQ(full_information_bound(6, 4, 1), 30.0);
}

TEST(Bounds, Theorem1GrowsLinearlyInPathBudget) {
  const double a = regret_bound_theorem1(2, 4, 10);
  const double b = regret_bound_theorem1(2, 4, 20);
  const double c = regret_bound_theorem1(2, 4, 30);
  EXPECT_DOUBLE_EQ(b - a, c - b);
}

TEST(PolicyState, DefaultsToProjectedOrigin) {
  EXPECT_EQ(make_policy_state(kOmega, 0.5).current, Point{0.0});
  EXPECT_EQ(make_policy_state(FeasibleSet::interval(1, 2), 0.5).current, Point{1.0});
  EXPECT_THROW(make_policy_state(kOmega, 0.5, Point{4.0}), Infeasible);
  EXPECT_THROW(make_policy_state(kOmega, -0.5), InvalidArgument);
}

TEST(OgdStep, Instance1Trajectory) {
  auto state = make_policy_state(kOmega, 0.5);
  const Loss g1(HalfQuadratic{}, kOmega);
  const Loss g2(ShiftedQuadratic{1.0}, kOmega);
  EXPECT_EQ(ogd_step(state, g1.gradient(state.current)), Point{0.0});
  EXPECT_EQ(ogd_step(state, g2.gradient(state.current)), Point{1.0});
  EXPECT_EQ(state.t, 2u);
}

TEST(OgdStep, HalfStepReachesShiftedMinimum) {
  for (double alpha : {1.0, 1.262144, 1.9}) {
    for (double w : {-1.0, 0.3, 2.5}) {
      auto state = make_policy_state(kOmega, 0.5, Point{w});
      const Loss g2(ShiftedQuadratic{alpha}, kOmega);
      ASSERT_DOUBLE_EQ(ogd_step(state, g2.gradient(state.current))[0], alpha);
    }
  }
}

TEST(OgdStep, ProjectsAndChecksDimension) {
  auto state = make_policy_state(kOmega, 1.0);
  EXPECT_EQ(ogd_step(state, Point{-10.0}), Point{3.0});
  EXPECT_THROW(ogd_step(state, Point{1.0, 1.0}), DimensionMismatch);
}

TEST(FollowMinimizer, PlaysPreviousArgmin) {
  auto state = make_policy_state(kOmega, 0.0);
  EXPECT_EQ(follow_minimizer_step(state, Loss(ShiftedQuadratic{1.0}, kOmega)), Point{1.0});
}

TEST(Lemma1Gap, ZeroGradientStationary) {
  const Point w{0.7};
  const Point star{0.2};
  EXPECT_EQ(lemma1_gap(w, w, star, star, Point{0.0}, 0.3, 4.0), 0.0);
  EXPECT_EQ(lemma1_gap_telescoped(w, w, star, star, Point{0.0}, 0.3, 4.0), 0.0);
  EXPECT_THROW(lemma1_gap(w, w, star, star, Point{0.0}, 0.0, 4.0), InvalidArgument);
}

TEST(Lemma1Gap, NonNegativeAlongOgdSteps) {
  const FeasibleSet omega = FeasibleSet::cube(2, -1, 1);
  const double r = 2.0 * std::sqrt(2.0);
  Rng rng(41);
  for (int k = 0; k < 5000; ++k) {
    Point w{2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
    const Point star{2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
    const Point star_next = project(omega, star + Point{0.3 * rng.normal(), 0.3 * rng.normal()});
    const Point g{3 * rng.normal(), 3 * rng.normal()};
    const double eta = 0.01 + rng.uniform();
    const Point w_next = project(omega, w - eta * g);
    ASSERT_GE(lemma1_gap(w, w_next, star, star_next, g, eta, r), -1e-9);
    ASSERT_GE(lemma1_gap_telescoped(w, w_next, star, star_next, g, eta, r), -1e-9);
  }
}
