// Copyright 2026 The submm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

namespace submm {
namespace {

using testing::NaiveOptimum;

std::unique_ptr<SetFunction> Diversity(std::uint64_t seed, double lambda = 0.8) {
  return random_instance("diversity", 12, seed, {{"lambda", lambda}});
}

std::unique_ptr<SetFunction> SqrtModular(std::size_t n, std::uint64_t seed) {
  return random_instance("cm", n, seed, {{"mode", "plain"}, {"w2_lo", 0.0}, {"w2_hi", 0.0}});
}

TEST(Schedules, ModularReturnsPositiveSupport) {
  ModularFn f(ModularVector({1.0, -2.0, 0.5, 0.0, 3.0, -0.1}));
  const SubsetMask pos(6, {0, 2, 4});
  ScheduleConfig cfg;
  cfg.seed = 7;
  EXPECT_EQ(mmax_dls(f, cfg).solution, pos);
  EXPECT_EQ(mmax_bg(f, cfg).solution, pos);
  EXPECT_EQ(mmax_rg(f, cfg).solution, pos);
  EXPECT_NEAR(mmax_rls(f, cfg).value, 4.5, 1e-12);
}

TEST(Schedules, DeterministicAndReproducible) {
  auto f = Diversity(3);
  ScheduleConfig cfg;
  cfg.seed = 11;
  auto a = mmax_dls(*f, cfg);
  auto b = mmax_dls(*f, cfg);
  ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) EXPECT_EQ(a.trajectory[i].set, b.trajectory[i].set);
  EXPECT_EQ(mmax_rg(*f, cfg).solution, mmax_rg(*f, cfg).solution);
  EXPECT_EQ(mmax_rp_ra(*f, cfg, true).solution, mmax_rp_ra(*f, cfg, true).solution);
}

TEST(Schedules, AscentCapsAndFactors) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto f = Diversity(seed, 0.5 + 0.05 * static_cast<double>(seed));
    const double opt = NaiveOptimum(*f, -1.0).value;
    ScheduleConfig cfg;
    cfg.seed = seed;
    for (auto r : {mmax_dls(*f, cfg), mmax_rls(*f, cfg), mmax_bg(*f, cfg), mmax_rg(*f, cfg),
                   mmax_rp_ra(*f, cfg, false), mmax_rp_ra(*f, cfg, true)}) {
      EXPECT_EQ(check_ascent(r.trajectory), "") << to_string(r.schedule);
      EXPECT_LE(static_cast<double>(r.iterations), iteration_cap(12, cfg.eta) + 1e-9) << to_string(r.schedule);
      EXPECT_NEAR(r.value, (*f)(r.solution), 1e-12);
    }
    EXPECT_GE(mmax_dls(*f, cfg).value, (1.0 / 3.0 - cfg.eta) * opt - 1e-9);
    EXPECT_GE(mmax_rls(*f, cfg).value, (1.0 / 3.0 - cfg.eta) * opt - 1e-9);
    auto bg = mmax_bg(*f, cfg);
    EXPECT_GE(bg.value, opt / 3.0 - 1e-9);
    ASSERT_TRUE(bg.reference_value.has_value());
    EXPECT_GE(bg.value, *bg.reference_value - 1e-12);
  }
}

TEST(Schedules, LocalSearchEndsAtApproximateLocalMax) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto f = Diversity(seed);
    ScheduleConfig cfg;
    auto r = mmax_dls(*f, cfg);
    ASSERT_TRUE(r.local_optimum.has_value());
    const SubsetMask& x = *r.local_optimum;
    for (std::size_t j = 0; j < 12; ++j) {
      SubsetMask y = x;
      y.flip(j);
      EXPECT_LE((*f)(y), (1.0 + cfg.eta) * (*f)(x) + 1e-9);
    }
  }
}

TEST(Schedules, RlsStartsAtBestSingleton) {
  auto f = Diversity(2);
  ScheduleConfig cfg;
  auto r = mmax_rls(*f, cfg);
  std::size_t best = 0;
  for (std::size_t j = 1; j < 12; ++j) {
    if ((*f)(SubsetMask(12, {j})) > (*f)(SubsetMask(12, {best}))) best = j;
  }
  ASSERT_FALSE(r.trajectory.empty());
  EXPECT_EQ(r.trajectory.front().set, SubsetMask(12, {best}));
}

TEST(Schedules, CertifyFillsFactor) {
  auto f = Diversity(1);
  ScheduleConfig cfg;
  cfg.certify = true;
  auto r = mmax_bg(*f, cfg);
  ASSERT_TRUE(r.factor_certificate && r.optimum_value);
  EXPECT_NEAR(*r.optimum_value, NaiveOptimum(*f, -1.0).value, 1e-9);
  EXPECT_NEAR(*r.factor_certificate, r.value / *r.optimum_value, 1e-12);
}

TEST(Schedules, NamesRoundTrip) {
  for (auto s : {Schedule::kRP, Schedule::kRA, Schedule::kRLS, Schedule::kDLS, Schedule::kBG, Schedule::kRG,
                 Schedule::kGreedy, Schedule::kKnapsackGreedy}) {
    EXPECT_EQ(schedule_from_string(to_string(s)), s);
  }
  EXPECT_THROW(schedule_from_string("nope"), std::invalid_argument);
}

TEST(BoundForms, Limits) {
  EXPECT_DOUBLE_EQ(cardinality_greedy_bound(0.0), 1.0);
  EXPECT_NEAR(cardinality_greedy_bound(1.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(matroid_greedy_bound(1, 1.0), 0.5);
  EXPECT_NEAR(down_monotone_greedy_bound(4, 2, 1.0), 1.0 - 0.5625, 1e-15);
  EXPECT_NEAR(kKnapsackBound, 0.3934693402873666, 1e-15);
  EXPECT_NEAR(iteration_cap(12, 0.01), std::log(12.0) / std::log(1.01), 1e-12);
}

TEST(Greedy, CardinalityAndPartitionBounds) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto f = SqrtModular(12, seed);
    const double kappa = curvature(*f);
    ScheduleConfig cfg;
    auto card = ConstraintFamily::CardinalityUpper(12, 4);
    auto rc = mmax_greedy_constrained(*f, card, cfg);
    const double opt_c = NaiveOptimum(*f, -1.0, [&](const SubsetMask& x) { return x.size() <= 4; }).value;
    EXPECT_TRUE(is_feasible(rc.solution, card));
    EXPECT_GE(rc.value, cardinality_greedy_bound(kappa) * opt_c - 1e-9);
    EXPECT_GE(rc.value, *rc.reference_value - 1e-12);

    auto part = ConstraintFamily::FromMatroid(Matroid::Partition({0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2}, {1, 2, 1}));
    auto rp = mmax_greedy_constrained(*f, part, cfg);
    const double opt_p = NaiveOptimum(*f, -1.0, [&](const SubsetMask& x) { return is_feasible(x, part); }).value;
    EXPECT_GE(rp.value, matroid_greedy_bound(1, kappa) * opt_p - 1e-9);
    ASSERT_TRUE(rp.bound.has_value());
    EXPECT_NEAR(*rp.bound, matroid_greedy_bound(1, kappa), 1e-12);
  }
}

TEST(Greedy, ModularCardinalityIsExact) {
  ModularFn f(ModularVector({1.0, 4.0, 2.0, 3.0, 0.5}));
  auto r = mmax_greedy_constrained(f, ConstraintFamily::CardinalityUpper(5, 2), {});
  EXPECT_EQ(r.solution, SubsetMask(5, {1, 3}));
  EXPECT_NEAR(*r.bound, 1.0, 1e-12);
}

TEST(Greedy, RejectsNonMonotone) {
  auto f = Diversity(0);
  EXPECT_THROW(mmax_greedy_constrained(*f, ConstraintFamily::CardinalityUpper(12, 3), {}), std::domain_error);
  EXPECT_THROW(mmax_knapsack(*f, std::vector<double>(12, 1.0), 3.0, {}), std::domain_error);
}

TEST(Knapsack, BoundsWithAndWithoutEnumeration) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> ci(1, 8);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto f = SqrtModular(12, seed);
    std::vector<double> costs(12);
    for (auto& x : costs) x = ci(rng);
    auto c = ConstraintFamily::Knapsack(costs, 12.0);
    const double opt = NaiveOptimum(*f, -1.0, [&](const SubsetMask& x) { return is_feasible(x, c); }).value;
    auto plain = mmax_knapsack(*f, costs, 12.0, {});
    auto full = mmax_knapsack(*f, costs, 12.0, {}, true);
    EXPECT_TRUE(is_feasible(plain.solution, c));
    EXPECT_TRUE(is_feasible(full.solution, c));
    EXPECT_GE(plain.value, kKnapsackBound * opt - 1e-9);
    EXPECT_GE(full.value, kKnapsackEnumerationBound * opt - 1e-9);
    EXPECT_GE(full.value, plain.value - 1e-12);
  }
}

TEST(Knapsack, NoFeasibleSingleton) {
  auto f = SqrtModular(4, 1);
  auto r = mmax_knapsack(*f, {5.0, 6.0, 7.0, 8.0}, 2.0, {});
  EXPECT_TRUE(r.solution.empty());
  EXPECT_FALSE(r.warnings.empty());
}

TEST(External, WrappedSolutionNeverWorse) {
  auto f = SqrtModular(10, 4);
  auto c = ConstraintFamily::CardinalityUpper(10, 3);
  const SubsetMask y(10, {0, 5, 9});
  auto r = mmax_from_solution(*f, y, c);
  EXPECT_GE(r.value, (*f)(y) - 1e-12);
  EXPECT_TRUE(is_feasible(r.solution, c));
  EXPECT_THROW(mmax_from_solution(*f, SubsetMask(10, {0, 1, 2, 3}), c), InfeasibleError);
}

TEST(MaxStep, RejectsUnanchoredPermutation) {
  auto f = SqrtModular(4, 0);
  EXPECT_THROW(detail::MaxStep(*f, Permutation::Identity(4), SubsetMask(4, {2}), ConstraintFamily::Unconstrained(4)),
               std::logic_error);
}

}  // namespace
}  // namespace submm
