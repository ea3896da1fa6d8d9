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

#include <random>

#include "test_util.hpp"

namespace submm {
namespace {

using testing::Ids;

TEST(BruteForce, WorkedExampleHasUniqueMinimizer) {
  auto f = testing::WorkedExample();
  auto r = brute_minimize(*f);
  ASSERT_EQ(r.optimizers.size(), 1u);
  EXPECT_EQ(r.optimizers.front(), Ids(10, {1, 6, 7, 8, 10}));
  EXPECT_EQ(r.enumerated, 1024u);
}

TEST(BruteForce, ModularSupports) {
  ModularFn f(ModularVector({-1.0, 2.0, -3.0, 4.0}));
  EXPECT_EQ(brute_minimize(f).optimizers.front(), SubsetMask(4, {0, 2}));
  EXPECT_EQ(brute_maximize(f).optimizers.front(), SubsetMask(4, {1, 3}));
}

TEST(BruteForce, TriangleTrees) {
  Graph g;
  g.vertices = 3;
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  ModularFn f(ModularVector({1.0, 1.0, 1.0}));
  auto r = brute_minimize(f, ConstraintFamily::SpanningTree(g));
  EXPECT_EQ(r.enumerated, 3u);
  EXPECT_EQ(r.optimizers.size(), 3u);
}

TEST(Certificate, BudgetRefused) {
  ModularFn f(ModularVector(std::vector<double>(kMaxCertificateN + 1, 1.0)));
  EXPECT_THROW(verify_lattice_claims(f), BudgetError);
  EXPECT_THROW(check_semigradient_membership(f, supergradient(f, f.empty_set(), SupergradientKind::kGrow)),
               BudgetError);
}

TEST(Certificate, WorkedExamplePasses) {
  auto f = testing::WorkedExample();
  auto cert = verify_lattice_claims(*f);
  EXPECT_TRUE(cert.passed());
  EXPECT_EQ(cert.claims.size(), 6u);
  EXPECT_EQ(cert.local_minima, 1u);
}

TEST(Certificate, ZooInstancesPass) {
  for (const auto& fam : testing::ZooFamilies()) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto f = testing::Zoo(fam, 9, seed);
      auto cert = verify_lattice_claims(*f);
      for (const auto& c : cert.claims) EXPECT_TRUE(c.passed) << fam << " " << c.claim << " " << c.detail;
    }
  }
}

TEST(Membership, PermutationsAndSupergradients) {
  std::mt19937_64 rng(17);
  for (const auto& fam : testing::ZooFamilies()) {
    auto f = testing::Zoo(fam, 8, 2);
    for (int t = 0; t < 3; ++t) {
      std::vector<std::size_t> order(8);
      for (std::size_t i = 0; i < 8; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t k = rng() % 9;
      Permutation sigma(order, k);
      auto h = subgradient_from_permutation(*f, sigma);
      EXPECT_TRUE(check_semigradient_membership(*f, h)) << fam;
      EXPECT_LE(anchor_gap(*f, lower_bound(*f, h)), 1e-9);
      for (auto kind : {SupergradientKind::kGrow, SupergradientKind::kShrink, SupergradientKind::kBar}) {
        auto g = supergradient(*f, sigma.anchor(), kind);
        EXPECT_TRUE(check_semigradient_membership(*f, g)) << fam << " " << to_string(kind);
        EXPECT_LE(anchor_gap(*f, upper_bound(*f, g)), 1e-9);
      }
    }
  }
}

TEST(Membership, PerturbedVectorHasWitness) {
  auto f = testing::WorkedExample();
  const SubsetMask y = Ids(10, {1, 6});
  const Permutation sigma = Permutation::AnchoredAt(y);
  auto h = subgradient_from_permutation(*f, sigma);
  // The entry right after the anchor is tight on Y + j; raising it breaks
  // the inequality there.
  const std::size_t j = sigma.order()[y.size()];
  h.h[j] += 1.0;
  auto w = find_semigradient_violation(*f, h);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->contains(j));
  EXPECT_LT((*f)(*w) - h.h(*w), (*f)(y) - h.h(y));

  auto g = supergradient(*f, y, SupergradientKind::kGrow);
  g.g[2] -= 1.0;
  auto wg = find_semigradient_violation(*f, g);
  ASSERT_TRUE(wg.has_value());
  EXPECT_GT((*f)(*wg) - g.g(*wg), (*f)(y) - g.g(y));
}

TEST(Certificate, RelabelingInvariance) {
  // Reversing the ground set maps the lattice endpoints through the same
  // relabeling.
  auto f = random_instance("cm", 10, 3, {{"mode", "plain"}, {"w2_lo", -1.0}, {"w2_hi", 1.0}});
  auto rev = [](const SubsetMask& x) {
    SubsetMask y(x.universe());
    for (std::size_t j : x.elements()) y.insert(x.universe() - 1 - j);
    return y;
  };
  LambdaFunction g(10, [&](const SubsetMask& x) { return (*f)(rev(x)); });
  auto a = prune(*f);
  auto b = prune(g);
  EXPECT_EQ(rev(a.tightened.lower), b.tightened.lower);
  EXPECT_EQ(rev(a.tightened.upper), b.tightened.upper);
  EXPECT_EQ(rev(a.classic.lower), b.classic.lower);
  EXPECT_EQ(rev(a.classic.upper), b.classic.upper);
}

}  // namespace
}  // namespace submm
