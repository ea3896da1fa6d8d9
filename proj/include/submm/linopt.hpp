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

#ifndef SUBMM_LINOPT_HPP_
#define SUBMM_LINOPT_HPP_

// Optimization of modular functions over constraint families: the inner
// solver of every majorize-minimize / minorize-maximize step.
//
// Graph families use the edge set as the ground set; element i is edge i.
// Ties are broken toward fewer elements and then toward smaller ids, so a
// zero-weight element only enters a solution when the family forces it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "submm/core.hpp"

namespace submm {

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // Side label (0 or 1) per vertex for bipartite graphs.
  std::optional<std::vector<int>> bipartition;
  std::optional<std::size_t> s;
  std::optional<std::size_t> t;

  std::size_t edge_count() const { return edges.size(); }

  void validate() const {
    if (vertices == 0) throw std::invalid_argument("graph needs at least one vertex");
    for (const auto& [u, v] : edges) {
      if (u >= vertices || v >= vertices) throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loops are not allowed");
    }
    if (bipartition && bipartition->size() != vertices) {
      throw std::invalid_argument("bipartition must label every vertex");
    }
    if (s && *s >= vertices) throw std::invalid_argument("source out of range");
    if (t && *t >= vertices) throw std::invalid_argument("target out of range");
  }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

inline bool IsForest(const Graph& g, const SubsetMask& x) {
  DisjointSets ds(g.vertices);
  for (std::size_t e : x.elements()) {
    if (!ds.unite(g.edges[e].first, g.edges[e].second)) return false;
  }
  return true;
}

// Side labels, taken from the graph or derived by two-coloring.
inline std::vector<int> Sides(const Graph& g) {
  if (g.bipartition) return *g.bipartition;
  std::vector<std::vector<std::size_t>> adj(g.vertices);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> side(g.vertices, -1);
  for (std::size_t r = 0; r < g.vertices; ++r) {
    if (side[r] != -1) continue;
    side[r] = 0;
    std::vector<std::size_t> stack{r};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u]) {
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          stack.push_back(v);
        } else if (side[v] == side[u]) {
          throw std::invalid_argument("matching graph is not bipartite");
        }
      }
    }
  }
  return side;
}

}  // namespace detail

// Independence system given by one of a few concrete matroids or a
// user-supplied oracle.
class Matroid {
 public:
  enum class Kind { kUniform, kPartition, kGraphic, kCustom };

  static Matroid Uniform(std::size_t n, std::size_t k) {
    Matroid m(Kind::kUniform, n);
    m.k_ = k;
    return m;
  }

  // block_of[j] names the block of element j; at most capacity[b] elements
  // from block b.
  static Matroid Partition(std::vector<std::size_t> block_of,
                           std::vector<std::size_t> capacity) {
    Matroid m(Kind::kPartition, block_of.size());
    for (std::size_t b : block_of) {
      if (b >= capacity.size()) throw std::invalid_argument("partition block without capacity");
    }
    m.block_of_ = std::move(block_of);
    m.capacity_ = std::move(capacity);
    return m;
  }

  static Matroid Graphic(Graph g) {
    g.validate();
    Matroid m(Kind::kGraphic, g.edge_count());
    m.graph_ = std::move(g);
    return m;
  }

  static Matroid Custom(std::size_t n, std::function<bool(const SubsetMask&)> independent) {
    Matroid m(Kind::kCustom, n);
    m.oracle_ = std::move(independent);
    return m;
  }

  Kind kind() const { return kind_; }
  std::size_t size() const { return n_; }

  bool is_independent(const SubsetMask& x) const {
    switch (kind_) {
      case Kind::kUniform:
        return x.size() <= k_;
      case Kind::kPartition: {
        std::vector<std::size_t> used(capacity_.size(), 0);
        for (std::size_t j : x.elements()) {
          if (++used[block_of_[j]] > capacity_[block_of_[j]]) return false;
        }
        return true;
      }
      case Kind::kGraphic:
        return detail::IsForest(graph_, x);
      case Kind::kCustom:
        return oracle_(x);
    }
    return false;
  }

  // Rank of the ground set, by greedy.
  std::size_t rank() const {
    SubsetMask basis(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      basis.insert(j);
      if (!is_independent(basis)) basis.erase(j);
    }
    return basis.size();
  }

 private:
  Matroid(Kind kind, std::size_t n) : kind_(kind), n_(n) {}

  Kind kind_;
  std::size_t n_;
  std::size_t k_ = 0;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> capacity_;
  Graph graph_;
  std::function<bool(const SubsetMask&)> oracle_;
};

enum class ConstraintKind {
  kUnconstrained,
  kCardinalityLower,
  kCardinalityUpper,
  kSpanningTree,
  kShortestPath,
  kPerfectMatching,
  kMatroid,
  kMatroidIntersection,
  kKnapsack,
};

inline std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::kUnconstrained: return "unconstrained";
    case ConstraintKind::kCardinalityLower: return "cardinality_lower";
    case ConstraintKind::kCardinalityUpper: return "cardinality_upper";
    case ConstraintKind::kSpanningTree: return "spanning_tree";
    case ConstraintKind::kShortestPath: return "shortest_path";
    case ConstraintKind::kPerfectMatching: return "perfect_matching";
    case ConstraintKind::kMatroid: return "matroid";
    case ConstraintKind::kMatroidIntersection: return "matroid_intersection";
    case ConstraintKind::kKnapsack: return "knapsack";
  }
  return "?";
}

// A feasible family C over a ground set of n elements.
class ConstraintFamily {
 public:
  static ConstraintFamily Unconstrained(std::size_t n) {
    return ConstraintFamily(ConstraintKind::kUnconstrained, n);
  }
  static ConstraintFamily CardinalityLower(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("cardinality lower bound exceeds n");
    ConstraintFamily c(ConstraintKind::kCardinalityLower, n);
    c.k_ = k;
    return c;
  }
  static ConstraintFamily CardinalityUpper(std::size_t n, std::size_t k) {
    if (k == 0) throw std::invalid_argument("cardinality upper bound must be positive");
    ConstraintFamily c(ConstraintKind::kCardinalityUpper, n);
    c.k_ = std::min(k, n);
    return c;
  }
  static ConstraintFamily SpanningTree(Graph g) { return FromGraph(ConstraintKind::kSpanningTree, std::move(g)); }
  static ConstraintFamily ShortestPath(Graph g) {
    if (!g.s || !g.t) throw std::invalid_argument("path family needs s and t");
    return FromGraph(ConstraintKind::kShortestPath, std::move(g));
  }
  static ConstraintFamily PerfectMatching(Graph g) {
    auto c = FromGraph(ConstraintKind::kPerfectMatching, std::move(g));
    c.sides_ = detail::Sides(c.graph_);
    return c;
  }
  static ConstraintFamily FromMatroid(Matroid m) {
    ConstraintFamily c(ConstraintKind::kMatroid, m.size());
    c.matroids_.push_back(std::move(m));
    return c;
  }
  static ConstraintFamily MatroidIntersection(std::vector<Matroid> ms) {
    if (ms.empty()) throw std::invalid_argument("matroid intersection needs at least one matroid");
    const std::size_t n = ms.front().size();
    for (const auto& m : ms) {
      if (m.size() != n) throw std::invalid_argument("matroids must share a ground set");
    }
    ConstraintFamily c(ConstraintKind::kMatroidIntersection, n);
    c.matroids_ = std::move(ms);
    return c;
  }
  static ConstraintFamily Knapsack(std::vector<double> costs, double budget) {
    if (costs.empty()) throw std::invalid_argument("knapsack needs costs");
    for (double x : costs) {
      if (!(x >= 0.0)) throw std::invalid_argument("knapsack costs must be nonnegative");
    }
    if (!(budget > 0.0)) throw std::invalid_argument("knapsack budget must be positive");
    ConstraintFamily c(ConstraintKind::kKnapsack, costs.size());
    c.costs_ = std::move(costs);
    c.budget_ = budget;
    return c;
  }

  ConstraintKind kind() const { return kind_; }
  std::size_t size() const { return n_; }
  std::size_t k() const { return k_; }
  const Graph& graph() const { return graph_; }
  const std::vector<Matroid>& matroids() const { return matroids_; }
  const std::vector<double>& costs() const { return costs_; }
  double budget() const { return budget_; }
  const std::vector<int>& sides() const { return sides_; }

  // Number of matroids for matroid kinds (a cardinality cap is one uniform
  // matroid).
  std::optional<std::size_t> matroid_count() const {
    if (kind_ == ConstraintKind::kCardinalityUpper) return 1;
    if (kind_ == ConstraintKind::kMatroid || kind_ == ConstraintKind::kMatroidIntersection) {
      return matroids_.size();
    }
    return std::nullopt;
  }

  bool is_down_monotone() const {
    return kind_ == ConstraintKind::kUnconstrained || kind_ == ConstraintKind::kCardinalityUpper ||
           kind_ == ConstraintKind::kMatroid || kind_ == ConstraintKind::kMatroidIntersection ||
           kind_ == ConstraintKind::kKnapsack;
  }

  // (K, k): largest and smallest cardinality of a maximal feasible set,
  // where known in closed form.
  std::optional<std::pair<std::size_t, std::size_t>> maximal_set_cardinalities() const {
    switch (kind_) {
      case ConstraintKind::kUnconstrained:
        return std::make_pair(n_, n_);
      case ConstraintKind::kCardinalityUpper:
        return std::make_pair(k_, k_);
      case ConstraintKind::kMatroid: {
        std::size_t r = matroids_.front().rank();
        return std::make_pair(r, r);
      }
      default:
        return std::nullopt;
    }
  }

 private:
  ConstraintFamily(ConstraintKind kind, std::size_t n) : kind_(kind), n_(n) {
    if (n == 0) throw std::invalid_argument("ground set must be nonempty");
  }
  static ConstraintFamily FromGraph(ConstraintKind kind, Graph g) {
    g.validate();
    if (g.edges.empty()) throw std::invalid_argument("graph has no edges");
    ConstraintFamily c(kind, g.edge_count());
    c.graph_ = std::move(g);
    return c;
  }

  ConstraintKind kind_;
  std::size_t n_;
  std::size_t k_ = 0;
  Graph graph_;
  std::vector<int> sides_;
  std::vector<Matroid> matroids_;
  std::vector<double> costs_;
  double budget_ = 0.0;
};

struct LinOptResult {
  SubsetMask set;
  double value = 0.0;
  bool exact = true;
  // Approximation factor of the solver when exact is false.
  std::optional<double> beta;
};

namespace detail {

inline std::vector<std::size_t> SortedIds(const ModularVector& w, bool ascending) {
  std::vector<std::size_t> ids(w.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? w[a] < w[b] : w[a] > w[b];
  });
  return ids;
}

inline void CheckWeights(const ModularVector& w, const ConstraintFamily& c) {
  if (w.size() != c.size()) throw std::invalid_argument("weight vector does not match ground set");
}

// Kruskal over ids sorted by `order`; throws when the graph is disconnected.
inline SubsetMask Kruskal(const Graph& g, const std::vector<std::size_t>& order) {
  DisjointSets ds(g.vertices);
  SubsetMask tree(g.edge_count());
  for (std::size_t e : order) {
    if (ds.unite(g.edges[e].first, g.edges[e].second)) tree.insert(e);
  }
  if (tree.size() + 1 != g.vertices) throw InfeasibleError("graph is disconnected: no spanning tree");
  return tree;
}

// Dijkstra on the undirected graph, ordering labels by (cost, hops).
inline SubsetMask ShortestPath(const Graph& g, const ModularVector& w) {
  const std::size_t nv = g.vertices;
  const std::size_t s = *g.s;
  const std::size_t t = *g.t;
  SubsetMask path(g.edge_count());
  if (s == t) return path;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nv);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    adj[g.edges[e].first].push_back({g.edges[e].second, e});
    adj[g.edges[e].second].push_back({g.edges[e].first, e});
  }
  using Label = std::pair<double, std::size_t>;
  const Label unreached{std::numeric_limits<double>::infinity(), 0};
  std::vector<Label> dist(nv, unreached);
  std::vector<std::optional<std::size_t>> via(nv);
  std::vector<bool> done(nv, false);
  using Item = std::pair<Label, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = {0.0, 0};
  pq.push({dist[s], s});
  while (!pq.empty()) {
    auto [label, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = true;
    for (auto [v, e] : adj[u]) {
      Label cand{label.first + std::max(w[e], 0.0), label.second + 1};
      if (cand < dist[v]) {
        dist[v] = cand;
        via[v] = e;
        pq.push({cand, v});
      }
    }
  }
  if (!done[t]) throw InfeasibleError("no s-t path exists");
  for (std::size_t v = t; v != s;) {
    std::size_t e = *via[v];
    path.insert(e);
    v = g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
  }
  return path;
}

// Minimum-cost perfect matching on a bipartite graph via the Hungarian
// method with potentials. Parallel edges keep the cheapest (then lowest id).
inline SubsetMask MinCostPerfectMatching(const Graph& g, const std::vector<int>& sides,
                                         const ModularVector& w) {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::vector<std::size_t> index(g.vertices);
  for (std::size_t v = 0; v < g.vertices; ++v) {
    if (sides[v] == 0) {
      index[v] = left.size();
      left.push_back(v);
    } else {
      index[v] = right.size();
      right.push_back(v);
    }
  }
  if (left.size() != right.size()) throw InfeasibleError("sides differ in size: no perfect matching");
  const std::size_t m = left.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> edge_at(m, std::vector<std::size_t>(m, kNone));
  double spread = 1.0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    if (sides[u] == sides[v]) throw std::invalid_argument("edge inside one side of the bipartition");
    if (sides[u] == 1) std::swap(u, v);
    std::size_t& slot = edge_at[index[u]][index[v]];
    if (slot == kNone || w[e] < w[slot]) slot = e;
    spread += std::abs(w[e]);
  }
  // Missing pairs cost more than any perfect matching made of real edges.
  const double missing = spread * static_cast<double>(m + 1);
  auto cost = [&](std::size_t i, std::size_t j) {
    return edge_at[i][j] == kNone ? missing : w[edge_at[i][j]];
  };
  // 1-based e-maxx formulation.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> pu(m + 1, 0.0), pv(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  std::vector<bool> used(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      std::size_t i0 = match[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - pu[i0] - pv[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          pu[match[j]] += delta;
          pv[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  SubsetMask result(g.edge_count());
  for (std::size_t j = 1; j <= m; ++j) {
    std::size_t e = edge_at[match[j] - 1][j - 1];
    if (e == kNone) throw InfeasibleError("graph has no perfect matching");
    result.insert(e);
  }
  return result;
}

inline bool AllIndependent(const std::vector<Matroid>& ms, const SubsetMask& x) {
  for (const auto& m : ms) {
    if (!m.is_independent(x)) return false;
  }
  return true;
}

inline SubsetMask GreedyIndependent(const std::vector<Matroid>& ms, const std::vector<std::size_t>& order,
                                    const std::function<bool(std::size_t)>& eligible) {
  SubsetMask x(ms.front().size());
  for (std::size_t j : order) {
    if (!eligible(j)) continue;
    x.insert(j);
    if (!AllIndependent(ms, x)) x.erase(j);
  }
  return x;
}

inline bool IsIntegral(double x) { return std::abs(x - std::round(x)) <= kTolerance; }

// Exact 0/1 knapsack by DP over integer capacity; nullopt when costs are not
// integral or the table would be too large.
inline std::optional<SubsetMask> KnapsackDp(const ModularVector& w, const std::vector<double>& costs,
                                            double budget) {
  const std::size_t n = costs.size();
  for (double c : costs) {
    if (!IsIntegral(c)) return std::nullopt;
  }
  const auto cap = static_cast<std::size_t>(std::floor(budget + kTolerance));
  if (static_cast<double>(n) * static_cast<double>(cap + 1) > 5e7) return std::nullopt;
  // best[i][b]: best value with items < i and capacity b.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(cap + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = static_cast<std::size_t>(std::llround(costs[i]));
    for (std::size_t b = 0; b <= cap; ++b) {
      best[i + 1][b] = best[i][b];
      if (w[i] > kTolerance && ci <= b) {
        best[i + 1][b] = std::max(best[i + 1][b], best[i][b - ci] + w[i]);
      }
    }
  }
  SubsetMask x(n);
  std::size_t b = cap;
  for (std::size_t i = n; i-- > 0;) {
    if (best[i + 1][b] != best[i][b]) {
      x.insert(i);
      b -= static_cast<std::size_t>(std::llround(costs[i]));
    }
  }
  return x;
}

// Ratio greedy plus best single item: a 1/2-approximation.
inline SubsetMask KnapsackGreedy(const ModularVector& w, const std::vector<double>& costs, double budget) {
  const std::size_t n = costs.size();
  std::vector<std::size_t> ids;
  for (std::size_t j = 0; j < n; ++j) {
    if (w[j] > kTolerance) ids.push_back(j);
  }
  auto ratio = [&](std::size_t j) {
    return costs[j] <= 0.0 ? std::numeric_limits<double>::infinity() : w[j] / costs[j];
  };
  std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });
  SubsetMask x(n);
  double spent = 0.0;
  for (std::size_t j : ids) {
    if (spent + costs[j] <= budget + kTolerance) {
      x.insert(j);
      spent += costs[j];
    }
  }
  std::optional<std::size_t> single;
  for (std::size_t j : ids) {
    if (costs[j] <= budget + kTolerance && (!single || w[j] > w[*single])) single = j;
  }
  if (single && w[*single] > w(x)) {
    SubsetMask s(n);
    s.insert(*single);
    return s;
  }
  return x;
}

}  // namespace detail

inline bool is_feasible(const SubsetMask& x, const ConstraintFamily& c) {
  if (x.universe() != c.size()) return false;
  switch (c.kind()) {
    case ConstraintKind::kUnconstrained:
      return true;
    case ConstraintKind::kCardinalityLower:
      return x.size() >= c.k();
    case ConstraintKind::kCardinalityUpper:
      return x.size() <= c.k();
    case ConstraintKind::kSpanningTree:
      return x.size() + 1 == c.graph().vertices && detail::IsForest(c.graph(), x);
    case ConstraintKind::kShortestPath: {
      const Graph& g = c.graph();
      if (*g.s == *g.t) return x.empty();
      std::vector<std::size_t> degree(g.vertices, 0);
      for (std::size_t e : x.elements()) {
        ++degree[g.edges[e].first];
        ++degree[g.edges[e].second];
      }
      std::size_t touched = 0;
      for (std::size_t v = 0; v < g.vertices; ++v) {
        if (degree[v] == 0) continue;
        ++touched;
        const bool terminal = v == *g.s || v == *g.t;
        if (terminal ? degree[v] != 1 : degree[v] != 2) return false;
      }
      if (degree[*g.s] != 1 || degree[*g.t] != 1) return false;
      // A forest with degrees 1,2,...,2,1 and |E| = |touched| - 1 is one path.
      return x.size() + 1 == touched && detail::IsForest(g, x);
    }
    case ConstraintKind::kPerfectMatching: {
      const Graph& g = c.graph();
      std::vector<std::size_t> degree(g.vertices, 0);
      for (std::size_t e : x.elements()) {
        ++degree[g.edges[e].first];
        ++degree[g.edges[e].second];
      }
      return std::all_of(degree.begin(), degree.end(), [](std::size_t d) { return d == 1; });
    }
    case ConstraintKind::kMatroid:
    case ConstraintKind::kMatroidIntersection:
      return detail::AllIndependent(c.matroids(), x);
    case ConstraintKind::kKnapsack: {
      double spent = 0.0;
      for (std::size_t j : x.elements()) spent += c.costs()[j];
      return spent <= c.budget() + kTolerance;
    }
  }
  return false;
}

// argmin_{X in C} w(X), choosing a minimum-cardinality minimizer.
inline LinOptResult minimize_modular(const ModularVector& w, const ConstraintFamily& c) {
  detail::CheckWeights(w, c);
  const std::size_t n = c.size();
  LinOptResult r{SubsetMask(n), 0.0, true, std::nullopt};
  auto negative = [&](std::size_t j) { return w[j] < -kTolerance; };
  switch (c.kind()) {
    case ConstraintKind::kUnconstrained:
      for (std::size_t j = 0; j < n; ++j) {
        if (negative(j)) r.set.insert(j);
      }
      break;
    case ConstraintKind::kCardinalityLower: {
      auto ids = detail::SortedIds(w, true);
      for (std::size_t i = 0; i < n; ++i) {
        if (i < c.k() || negative(ids[i])) r.set.insert(ids[i]);
      }
      break;
    }
    case ConstraintKind::kCardinalityUpper: {
      auto ids = detail::SortedIds(w, true);
      for (std::size_t i = 0; i < c.k() && negative(ids[i]); ++i) r.set.insert(ids[i]);
      break;
    }
    case ConstraintKind::kSpanningTree:
      r.set = detail::Kruskal(c.graph(), detail::SortedIds(w, true));
      break;
    case ConstraintKind::kShortestPath:
      for (std::size_t j = 0; j < n; ++j) {
        if (negative(j)) throw std::invalid_argument("nonnegative weights required for path kind");
      }
      r.set = detail::ShortestPath(c.graph(), w);
      break;
    case ConstraintKind::kPerfectMatching:
      r.set = detail::MinCostPerfectMatching(c.graph(), c.sides(), w);
      break;
    case ConstraintKind::kMatroid:
    case ConstraintKind::kMatroidIntersection:
      r.set = detail::GreedyIndependent(c.matroids(), detail::SortedIds(w, true), negative);
      if (c.kind() == ConstraintKind::kMatroidIntersection && c.matroids().size() > 1) r.exact = false;
      break;
    case ConstraintKind::kKnapsack:
      throw UnsupportedError("knapsack minimization is not supported");
  }
  r.value = w(r.set);
  return r;
}

// argmax_{X in C} w(X), choosing a minimum-cardinality maximizer.
inline LinOptResult maximize_modular(const ModularVector& w, const ConstraintFamily& c) {
  detail::CheckWeights(w, c);
  const std::size_t n = c.size();
  LinOptResult r{SubsetMask(n), 0.0, true, std::nullopt};
  auto positive = [&](std::size_t j) { return w[j] > kTolerance; };
  switch (c.kind()) {
    case ConstraintKind::kUnconstrained:
      for (std::size_t j = 0; j < n; ++j) {
        if (positive(j)) r.set.insert(j);
      }
      break;
    case ConstraintKind::kCardinalityUpper: {
      auto ids = detail::SortedIds(w, false);
      for (std::size_t i = 0; i < c.k() && positive(ids[i]); ++i) r.set.insert(ids[i]);
      break;
    }
    case ConstraintKind::kCardinalityLower: {
      auto ids = detail::SortedIds(w, false);
      for (std::size_t i = 0; i < n; ++i) {
        if (i < c.k() || positive(ids[i])) r.set.insert(ids[i]);
      }
      break;
    }
    case ConstraintKind::kSpanningTree:
      r.set = detail::Kruskal(c.graph(), detail::SortedIds(w, false));
      break;
    case ConstraintKind::kShortestPath:
      throw UnsupportedError("maximizing over paths (longest path) is not supported");
    case ConstraintKind::kPerfectMatching: {
      ModularVector neg(n);
      for (std::size_t j = 0; j < n; ++j) neg[j] = -w[j];
      r.set = detail::MinCostPerfectMatching(c.graph(), c.sides(), neg);
      break;
    }
    case ConstraintKind::kMatroid:
    case ConstraintKind::kMatroidIntersection:
      r.set = detail::GreedyIndependent(c.matroids(), detail::SortedIds(w, false), positive);
      if (c.matroids().size() > 1) {
        r.exact = false;
        r.beta = 1.0 / static_cast<double>(c.matroids().size());
      }
      break;
    case ConstraintKind::kKnapsack:
      if (auto dp = detail::KnapsackDp(w, c.costs(), c.budget())) {
        r.set = std::move(*dp);
      } else {
        r.set = detail::KnapsackGreedy(w, c.costs(), c.budget());
        r.exact = false;
        r.beta = 0.5;
      }
      break;
  }
  r.value = w(r.set);
  return r;
}

// ---- JSON -------------------------------------------------------------------
//
// Graph: {"vertices": int, "edges": [[u,v],...], "bipartition": [0|1,...],
//         "s": int, "t": int}. Vertex ids are 0-based; element i is edge i.
// Constraint: {"kind": "...", ...} with per-kind fields k, graph, costs,
// budget, matroid(s). Element ids inside matroid blocks are 1-based.

inline Graph graph_from_json(const nlohmann::json& j) {
  Graph g;
  g.vertices = j.at("vertices").get<std::size_t>();
  for (const auto& e : j.at("edges")) {
    g.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  }
  if (j.contains("bipartition")) g.bipartition = j.at("bipartition").get<std::vector<int>>();
  if (j.contains("s")) g.s = j.at("s").get<std::size_t>();
  if (j.contains("t")) g.t = j.at("t").get<std::size_t>();
  g.validate();
  return g;
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
  if (g.bipartition) j["bipartition"] = *g.bipartition;
  if (g.s) j["s"] = *g.s;
  if (g.t) j["t"] = *g.t;
  return j;
}

inline Matroid matroid_from_json(const nlohmann::json& j, std::size_t n) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") return Matroid::Uniform(n, j.at("k").get<std::size_t>());
  if (type == "partition") {
    std::vector<std::size_t> block_of(n, 0);
    std::vector<bool> assigned(n, false);
    const auto& blocks = j.at("blocks");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (auto id : blocks[b].get<std::vector<std::size_t>>()) {
        if (id == 0 || id > n) throw std::invalid_argument("partition id out of range");
        block_of[id - 1] = b;
        assigned[id - 1] = true;
      }
    }
    if (!std::all_of(assigned.begin(), assigned.end(), [](bool a) { return a; })) {
      throw std::invalid_argument("partition blocks must cover the ground set");
    }
    return Matroid::Partition(std::move(block_of), j.at("capacities").get<std::vector<std::size_t>>());
  }
  if (type == "graphic") return Matroid::Graphic(graph_from_json(j.at("graph")));
  throw std::invalid_argument("unknown matroid type: " + type);
}

// `n` is the ground-set size for non-graph kinds; graph kinds use the edge
// count.
inline ConstraintFamily constraint_from_json(const nlohmann::json& j, std::size_t n) {
  const std::string kind = j.value("kind", "unconstrained");
  if (kind == "unconstrained") return ConstraintFamily::Unconstrained(n);
  if (kind == "cardinality_lower") return ConstraintFamily::CardinalityLower(n, j.at("k").get<std::size_t>());
  if (kind == "cardinality_upper") return ConstraintFamily::CardinalityUpper(n, j.at("k").get<std::size_t>());
  if (kind == "spanning_tree") return ConstraintFamily::SpanningTree(graph_from_json(j.at("graph")));
  if (kind == "shortest_path") return ConstraintFamily::ShortestPath(graph_from_json(j.at("graph")));
  if (kind == "perfect_matching") return ConstraintFamily::PerfectMatching(graph_from_json(j.at("graph")));
  if (kind == "matroid") return ConstraintFamily::FromMatroid(matroid_from_json(j.at("matroid"), n));
  if (kind == "matroid_intersection") {
    std::vector<Matroid> ms;
    for (const auto& m : j.at("matroids")) ms.push_back(matroid_from_json(m, n));
    return ConstraintFamily::MatroidIntersection(std::move(ms));
  }
  if (kind == "knapsack") {
    return ConstraintFamily::Knapsack(j.at("costs").get<std::vector<double>>(), j.at("budget").get<double>());
  }
  throw std::invalid_argument("unknown constraint kind: " + kind);
}

// Ground-set size implied by a constraint description, if any.
inline std::optional<std::size_t> constraint_ground_size(const nlohmann::json& j) {
  if (j.contains("graph")) return j.at("graph").at("edges").size();
  if (j.contains("costs")) return j.at("costs").size();
  return std::nullopt;
}

}  // namespace submm

#endif  // SUBMM_LINOPT_HPP_
