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

using testing::Ids;

TEST(ConcaveOverModular, WorkedExampleSingleton) {
  auto f = testing::WorkedExample();
  EXPECT_NEAR((*f)(Ids(10, {1})), std::sqrt(3.0) - 9.0, 1e-12);
  EXPECT_NEAR((*f)(Ids(10, {1, 6, 7, 8, 10})), std::sqrt(35.0) - 28.0, 1e-12);
}

TEST(ConcaveOverModular, ComplementModeShiftsByConstant) {
  // sqrt(w1(X)) + lambda w2(V \ X), normalized: differs from the raw value by
  // lambda w2(V).
  ModularVector w1({1, 2, 3}), w2({0.5, 0.25, 1.0});
  ConcaveOverModularFn f(w1, w2, ConcaveKind::kSqrt, ModularMode::kComplement, 2.0);
  for (std::uint64_t b = 0; b < 8; ++b) {
    auto x = SubsetMask::FromBits(3, b);
    const double raw = std::sqrt(w1(x)) + 2.0 * w2(x.complement());
    EXPECT_NEAR(f(x), raw - 2.0 * w2(SubsetMask::Full(3)), 1e-12);
  }
}

TEST(ConcaveOverModular, Log1pKind) {
  ConcaveOverModularFn f(ModularVector({1, 2}), ModularVector({0, 0}), ConcaveKind::kLog1p);
  EXPECT_NEAR(f(SubsetMask::Full(2)), std::log(4.0), 1e-12);
}

TEST(ConcaveOverModular, RejectsNegativeW1) {
  EXPECT_THROW(ConcaveOverModularFn(ModularVector({-1, 1}), ModularVector({0, 0})), std::invalid_argument);
}

TEST(IwataTestFn, AllValuesAtNTwo) {
  // |X||V\X| - sum (5 j - 4): j=1 -> 1, j=2 -> 6.
  IwataTestFn f(2);
  EXPECT_EQ(f(SubsetMask(2)), 0.0);
  EXPECT_EQ(f(Ids(2, {1})), 0.0);
  EXPECT_EQ(f(Ids(2, {2})), -5.0);
  EXPECT_EQ(f(Ids(2, {1, 2})), -7.0);
}

TEST(WorstCaseFn, CanonicalParameters) {
  auto f = random_instance("wc", 16, 3, {{"eps", 0.1}});
  auto* wc = dynamic_cast<WorstCaseFn*>(f.get());
  ASSERT_NE(wc, nullptr);
  EXPECT_NEAR(wc->alpha(), std::pow(16.0, 0.6), 1e-12);
  EXPECT_NEAR(wc->alpha(), 5.278031643, 1e-9);
  EXPECT_NEAR(wc->beta(), 1.741101127, 1e-9);
  EXPECT_EQ(wc->hidden_set().size(), 5u);
  EXPECT_EQ((*f)(f->empty_set()), 0.0);
}

TEST(BestSetFn, PlantedSetValue) {
  BestSetFn f(SubsetMask(4, {0, 1}), ModularVector({0.3, 0.4, 0.5, 0.6}));
  EXPECT_EQ(f(SubsetMask(4)), 0.0);
  EXPECT_EQ(f(SubsetMask(4, {0})), 1.0);
  EXPECT_EQ(f(SubsetMask(4, {0, 1})), 1.0);
  EXPECT_NEAR(f(SubsetMask(4, {1, 3})), 1.6, 1e-12);
  EXPECT_NEAR(f(SubsetMask(4, {2})), 0.5, 1e-12);
}

TEST(DiversityRelevance, DefinitionOnSmallMatrix) {
  DiversityRelevanceFn f({{1, 0.5}, {0.5, 1}}, 0.5);
  // Relevance 1.5 per element; redundancy of {1,2} = 1 + 0.5 + 0.5 + 1.
  EXPECT_NEAR(f(SubsetMask(2, {0})), 1.5 - 0.5, 1e-12);
  EXPECT_NEAR(f(SubsetMask::Full(2)), 3.0 - 0.5 * 3.0, 1e-12);
  EXPECT_THROW(DiversityRelevanceFn({{1.0}}, -1.0), std::invalid_argument);
}

TEST(ClusteredConcaveModular, EmptyClusterRejected) {
  EXPECT_THROW(ClusteredConcaveModularFn({{0}, {}}, ModularVector({1, 1})), std::invalid_argument);
}

TEST(ClusteredConcaveModular, SingletonClustersMatchPlainCurvature) {
  // With singleton clusters f is modular in sqrt(w), so kappa equals that of
  // sum_j sqrt(w_j), i.e. zero.
  ClusteredConcaveModularFn f({{0}, {1}, {2}}, ModularVector({1, 4, 9}));
  ModularFn g(ModularVector({1, 2, 3}));
  EXPECT_NEAR(curvature(f), curvature(g), 1e-12);
  EXPECT_NEAR(f(SubsetMask::Full(3)), 6.0, 1e-12);
}

TEST(Zoo, NormalizedAndSubmodular) {
  for (const auto& fam : testing::ZooFamilies()) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto f = testing::Zoo(fam, 9, seed);
      EXPECT_EQ((*f)(f->empty_set()), 0.0) << fam;
      EXPECT_TRUE(is_submodular(*f)) << fam << " seed " << seed;
    }
  }
}

TEST(Zoo, MonotoneFamiliesAreMonotone) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    EXPECT_TRUE(is_monotone(*random_instance("ccm", 10, seed)));
    EXPECT_TRUE(is_monotone(*random_instance("bipartite", 10, seed, {{"lambda", 0.0}})));
    EXPECT_TRUE(is_monotone(*random_instance("wc", 10, seed)));
    EXPECT_TRUE(is_monotone(*random_instance("cm", 10, seed, {{"mode", "plain"}})));
    EXPECT_TRUE(is_monotone(*random_instance("bs", 10, seed)));
  }
}

TEST(RandomInstance, Deterministic) {
  auto a = random_instance("cm", 50, 7);
  auto b = random_instance("cm", 50, 7);
  std::mt19937_64 rng(123);
  for (int t = 0; t < 100; ++t) {
    SubsetMask x(50);
    for (std::size_t j = 0; j < 50; ++j) {
      if (rng() & 1) x.insert(j);
    }
    EXPECT_EQ((*a)(x), (*b)(x));
  }
}

TEST(RandomInstance, DiversityRestrictionIsSubmodular) {
  auto f = random_instance("diversity", 20, 1, {{"lambda", 0.5}});
  // Restriction to the first ten elements.
  LambdaFunction g(10, [&](const SubsetMask& x) {
    SubsetMask y(20);
    for (auto j : x.elements()) y.insert(j);
    return (*f)(y);
  });
  EXPECT_TRUE(is_submodular(g));
}

TEST(RandomInstance, ExplicitParametersAndErrors) {
  auto f = random_instance("modular", 3, 0, {{"w", {1.0, -2.0, 3.0}}});
  EXPECT_EQ((*f)(SubsetMask::Full(3)), 2.0);
  EXPECT_THROW(random_instance("nope", 3, 0), std::invalid_argument);
  EXPECT_THROW(random_instance("modular", 3, 0, {{"w", {1.0}}}), std::invalid_argument);
  EXPECT_THROW(random_instance("bs", 3, 0, {{"R", {4}}}), std::invalid_argument);
  auto bs = random_instance("bs", 4, 0, {{"R", {1, 2}}, {"w", {0.3, 0.4, 0.5, 0.6}}});
  EXPECT_EQ((*bs)(SubsetMask(4, {1})), 1.0);
}

}  // namespace
}  // namespace submm
