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

Graph Triangle() {
  Graph g;
  g.vertices = 3;
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  g.s = 0;
  g.t = 2;
  return g;
}

ModularVector RandomWeights(std::size_t n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(lo, hi);
  ModularVector w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = d(rng);
  return w;
}

// Exhaustive optimum of w over the feasible sets of c.
double Exhaustive(const ModularVector& w, const ConstraintFamily& c, bool maximize) {
  const std::size_t n = c.size();
  double best = maximize ? -1e300 : 1e300;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    auto x = SubsetMask::FromBits(n, b);
    if (!is_feasible(x, c)) continue;
    best = maximize ? std::max(best, w(x)) : std::min(best, w(x));
  }
  return best;
}

TEST(Feasibility, TriangleStructures) {
  auto tree = ConstraintFamily::SpanningTree(Triangle());
  auto path = ConstraintFamily::ShortestPath(Triangle());
  int trees = 0, paths = 0;
  for (std::uint64_t b = 0; b < 8; ++b) {
    trees += is_feasible(SubsetMask::FromBits(3, b), tree);
    paths += is_feasible(SubsetMask::FromBits(3, b), path);
  }
  EXPECT_EQ(trees, 3);
  // {0-2} directly, or {0-1, 1-2}.
  EXPECT_EQ(paths, 2);
  EXPECT_TRUE(is_feasible(SubsetMask(3, {2}), path));
  EXPECT_FALSE(is_feasible(SubsetMask(3, {0}), path));
}

TEST(Feasibility, PathRejectsDetachedCycle) {
  // Square 0-1-2-3 plus an s-t edge; {s-t} + the square's cycle is not a path.
  Graph g;
  g.vertices = 6;
  g.edges = {{0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 1}};
  g.s = 0;
  g.t = 5;
  auto c = ConstraintFamily::ShortestPath(g);
  EXPECT_TRUE(is_feasible(SubsetMask(5, {0}), c));
  EXPECT_FALSE(is_feasible(SubsetMask(5, {0, 1, 2, 3, 4}), c));
}

TEST(Feasibility, MatchingAndKnapsack) {
  auto m = ConstraintFamily::PerfectMatching(complete_bipartite(2, 2));
  // Edges: (0,2), (0,3), (1,2), (1,3).
  EXPECT_TRUE(is_feasible(SubsetMask(4, {0, 3}), m));
  EXPECT_FALSE(is_feasible(SubsetMask(4, {0, 1}), m));
  auto k = ConstraintFamily::Knapsack({1.0, 2.0, 3.0}, 3.0);
  EXPECT_TRUE(is_feasible(SubsetMask(3, {0, 1}), k));
  EXPECT_FALSE(is_feasible(SubsetMask(3, {1, 2}), k));
}

TEST(MinimizeModular, UnconstrainedPicksStrictNegatives) {
  ModularVector w({-1.0, 0.0, 2.0, -1e-12, -3.0});
  auto r = minimize_modular(w, ConstraintFamily::Unconstrained(5));
  EXPECT_EQ(r.set, SubsetMask(5, {0, 4}));
  EXPECT_DOUBLE_EQ(r.value, -4.0);
  EXPECT_TRUE(r.exact);
}

TEST(MinimizeModular, MatchesExhaustiveOnGrids) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const auto w = RandomWeights(12, 0.0, 1.0, rng);
    for (auto c : {ConstraintFamily::SpanningTree(grid_graph(3, 3, false)),
                   ConstraintFamily::ShortestPath(grid_graph(3, 3, false)),
                   ConstraintFamily::CardinalityLower(12, 4)}) {
      auto r = minimize_modular(w, c);
      EXPECT_TRUE(is_feasible(r.set, c)) << to_string(c.kind());
      EXPECT_NEAR(r.value, Exhaustive(w, c, false), 1e-9) << to_string(c.kind());
    }
    const auto wm = RandomWeights(10, -1.0, 1.0, rng);
    auto match = ConstraintFamily::PerfectMatching(grid_graph(2, 4, false));
    EXPECT_NEAR(minimize_modular(wm, match).value, Exhaustive(wm, match, false), 1e-9);
    EXPECT_NEAR(maximize_modular(wm, match).value, Exhaustive(wm, match, true), 1e-9);
  }
}

TEST(MinimizeModular, PathPrefersFewerEdgesOnTies) {
  Graph g = Triangle();
  auto r = minimize_modular(ModularVector({0.0, 0.0, 0.0}), ConstraintFamily::ShortestPath(g));
  EXPECT_EQ(r.set, SubsetMask(3, {2}));
}

TEST(MinimizeModular, Errors) {
  EXPECT_THROW(minimize_modular(ModularVector({-1.0, 1.0, 1.0}), ConstraintFamily::ShortestPath(Triangle())),
               std::invalid_argument);
  EXPECT_THROW(minimize_modular(ModularVector({1.0, 1.0}), ConstraintFamily::Knapsack({1.0, 1.0}, 1.0)),
               UnsupportedError);
  Graph split;
  split.vertices = 4;
  split.edges = {{0, 1}, {2, 3}};
  EXPECT_THROW(minimize_modular(ModularVector({1.0, 1.0}), ConstraintFamily::SpanningTree(split)), InfeasibleError);
  EXPECT_THROW(minimize_modular(ModularVector({1.0}), ConstraintFamily::Unconstrained(2)), std::invalid_argument);
  EXPECT_THROW(maximize_modular(ModularVector({1.0, 1.0, 1.0}), ConstraintFamily::ShortestPath(Triangle())),
               UnsupportedError);
}

TEST(MaximizeModular, MatroidsAndKnapsackMatchExhaustive) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto w = RandomWeights(10, -0.5, 1.0, rng);
    auto part = ConstraintFamily::FromMatroid(Matroid::Partition({0, 0, 0, 1, 1, 1, 2, 2, 2, 2}, {1, 2, 2}));
    EXPECT_NEAR(maximize_modular(w, part).value, Exhaustive(w, part, true), 1e-9);
    auto graphic = ConstraintFamily::FromMatroid(Matroid::Graphic(grid_graph(2, 3, false)));
    const auto wg = RandomWeights(7, -0.5, 1.0, rng);
    EXPECT_NEAR(maximize_modular(wg, graphic).value, Exhaustive(wg, graphic, true), 1e-9);
    auto card = ConstraintFamily::CardinalityUpper(10, 3);
    EXPECT_NEAR(maximize_modular(w, card).value, Exhaustive(w, card, true), 1e-9);
    std::vector<double> costs(10);
    std::uniform_int_distribution<int> ci(1, 6);
    for (auto& x : costs) x = ci(rng);
    auto knap = ConstraintFamily::Knapsack(costs, 12.0);
    auto r = maximize_modular(w, knap);
    EXPECT_TRUE(r.exact);
    EXPECT_NEAR(r.value, Exhaustive(w, knap, true), 1e-9);
  }
}

TEST(MaximizeModular, FractionalKnapsackFallsBackToGreedy) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto w = RandomWeights(10, 0.0, 1.0, rng);
    std::vector<double> costs(10);
    std::uniform_real_distribution<double> d(0.5, 3.5);
    for (auto& x : costs) x = d(rng);
    auto knap = ConstraintFamily::Knapsack(costs, 5.0);
    auto r = maximize_modular(w, knap);
    EXPECT_FALSE(r.exact);
    ASSERT_TRUE(r.beta.has_value());
    EXPECT_TRUE(is_feasible(r.set, knap));
    EXPECT_GE(r.value, *r.beta * Exhaustive(w, knap, true) - 1e-9);
  }
}

TEST(ConstraintFamily, Metadata) {
  EXPECT_EQ(ConstraintFamily::CardinalityUpper(5, 2).matroid_count(), 1u);
  EXPECT_TRUE(ConstraintFamily::Knapsack({1.0}, 1.0).is_down_monotone());
  EXPECT_FALSE(ConstraintFamily::SpanningTree(Triangle()).is_down_monotone());
  auto mc = ConstraintFamily::FromMatroid(Matroid::Graphic(Triangle())).maximal_set_cardinalities();
  ASSERT_TRUE(mc.has_value());
  EXPECT_EQ(mc->first, 2u);
  EXPECT_THROW(ConstraintFamily::CardinalityLower(3, 4), std::invalid_argument);
  EXPECT_THROW(ConstraintFamily::Knapsack({-1.0}, 1.0), std::invalid_argument);
}

TEST(Json, GraphRoundTripAndConstraints) {
  Graph g = grid_graph(2, 2, true);
  Graph back = graph_from_json(graph_to_json(g));
  EXPECT_EQ(back.edges, g.edges);
  EXPECT_EQ(back.vertices, g.vertices);
  EXPECT_EQ(back.s, g.s);

  auto j = nlohmann::json::parse(R"({"kind": "matroid",
      "matroid": {"type": "partition", "blocks": [[1, 2], [3]], "capacities": [1, 1]}})");
  auto c = constraint_from_json(j, 3);
  EXPECT_TRUE(is_feasible(SubsetMask(3, {0, 2}), c));
  EXPECT_FALSE(is_feasible(SubsetMask(3, {0, 1}), c));
  EXPECT_THROW(constraint_from_json(nlohmann::json::parse(R"({"kind": "nope"})"), 3), std::invalid_argument);
  auto bad = nlohmann::json::parse(R"({"kind": "matroid",
      "matroid": {"type": "partition", "blocks": [[1]], "capacities": [1]}})");
  EXPECT_THROW(constraint_from_json(bad, 3), std::invalid_argument);
  EXPECT_EQ(constraint_ground_size(nlohmann::json::parse(R"({"costs": [1, 2]})")), 2u);
}

}  // namespace
}  // namespace submm
