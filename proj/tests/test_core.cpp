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

TEST(SubsetMask, BasicOperations) {
  SubsetMask s(70);
  EXPECT_TRUE(s.empty());
  s.insert(0);
  s.insert(65);
  s.insert(65);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(65));
  EXPECT_FALSE(s.contains(64));
  s.erase(0);
  EXPECT_EQ(s.elements(), std::vector<std::size_t>{65});
  EXPECT_EQ(s.complement().size(), 69u);
  EXPECT_EQ(SubsetMask::Full(70).size(), 70u);
  EXPECT_EQ((s | s.complement()), SubsetMask::Full(70));
  EXPECT_TRUE((s & s.complement()).empty());
}

TEST(SubsetMask, OneBasedText) {
  SubsetMask s(10, {0, 5, 9});
  EXPECT_EQ(s.to_string(), "{1,6,10}");
  EXPECT_EQ(s.one_based(), (std::vector<std::size_t>{1, 6, 10}));
  EXPECT_EQ(SubsetMask(4).to_string(), "{}");
}

TEST(SubsetMask, SetAlgebraMatchesBits) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t a = rng() & 0xFFF, b = rng() & 0xFFF;
    const auto x = SubsetMask::FromBits(12, a), y = SubsetMask::FromBits(12, b);
    EXPECT_EQ((x | y).low_bits(), a | b);
    EXPECT_EQ((x & y).low_bits(), a & b);
    EXPECT_EQ((x - y).low_bits(), a & ~b);
    EXPECT_EQ((x ^ y).low_bits(), a ^ b);
    EXPECT_EQ(x.is_subset_of(y), (a & ~b) == 0);
    EXPECT_EQ(x.size(), static_cast<std::size_t>(std::popcount(a)));
  }
}

TEST(SubsetMask, UniverseMismatchThrows) {
  EXPECT_THROW(SubsetMask(3).is_subset_of(SubsetMask(4)), std::invalid_argument);
}

TEST(SetFunction, CountsEvaluations) {
  ModularFn f(ModularVector({1, 2, 3}));
  f.reset_eval_count();
  f(f.empty_set());
  f(f.ground_set());
  EXPECT_EQ(f.eval_count(), 2u);
  EXPECT_THROW(f(SubsetMask(4)), std::invalid_argument);
}

TEST(Gain, DefinitionAndEdgeCases) {
  auto f = testing::WorkedExample();
  const auto s = Ids(10, {2, 3});
  EXPECT_NEAR(gain(*f, 0, s), (*f)(Ids(10, {1, 2, 3})) - (*f)(s), 1e-12);
  EXPECT_EQ(gain(*f, 1, s), 0.0);
  EXPECT_THROW(gain(*f, 10, s), std::invalid_argument);
  EXPECT_NEAR(removal_gain(*f, 1, s), (*f)(s) - (*f)(Ids(10, {3})), 1e-12);
}

TEST(Tabulate, RefusesLargeGroundSets) {
  ModularFn f(ModularVector(kMaxExhaustiveN + 1, 1.0));
  EXPECT_THROW(tabulate(f), BudgetError);
}

TEST(IsSubmodular, KnownCases) {
  EXPECT_TRUE(is_submodular(*CardinalityFn::Power(6, 0.5)));
  EXPECT_FALSE(is_submodular(*CardinalityFn::Power(6, 2.0)));
  EXPECT_TRUE(is_submodular(*CardinalityFn::Power(6, 1.0)));
  // Supermodular pair interaction.
  LambdaFunction bad(3, [](const SubsetMask& x) { return x.contains(0) && x.contains(1) ? 1.0 : 0.0; });
  EXPECT_FALSE(is_submodular(bad));
}

TEST(IsMonotone, KnownCases) {
  EXPECT_TRUE(is_monotone(*CardinalityFn::Rank(5, 2)));
  EXPECT_FALSE(is_monotone(*CardinalityFn::Symmetric(5, 1.0)));
}

TEST(Curvature, ModularIsZero) {
  ModularFn f(ModularVector({0.5, 1.0, 2.0}));
  EXPECT_NEAR(curvature(f), 0.0, 1e-12);
}

TEST(Curvature, MatroidRankIsOne) { EXPECT_NEAR(curvature(*CardinalityFn::Rank(5, 2)), 1.0, 1e-12); }

TEST(Curvature, SqrtCardinality) {
  // f(j | V \ j) = sqrt(n) - sqrt(n - 1), f(j) = 1.
  const double n = 4.0;
  EXPECT_NEAR(curvature(*CardinalityFn::Power(4, 0.5)), 1.0 - (std::sqrt(n) - std::sqrt(n - 1.0)), 1e-12);
}

TEST(Curvature, UndefinedCasesThrow) {
  ModularFn zero(ModularVector({0.0, 1.0}));
  EXPECT_THROW(curvature(zero), std::domain_error);
  EXPECT_THROW(curvature(*CardinalityFn::Symmetric(4, 1.0)), std::domain_error);
}

TEST(LocalOptimality, OneFlipScan) {
  ModularFn f(ModularVector({-1.0, 2.0, -3.0}));
  EXPECT_TRUE(is_local_minimum(f, SubsetMask(3, {0, 2})));
  EXPECT_FALSE(is_local_minimum(f, SubsetMask(3, {0})));
  EXPECT_TRUE(is_local_maximum(f, SubsetMask(3, {1})));
  EXPECT_FALSE(is_local_maximum(f, SubsetMask(3, {1, 2})));
  EXPECT_TRUE(is_local_maximum(f, SubsetMask(3, {0, 1}), 1.0));
}

}  // namespace
}  // namespace submm
