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

#ifndef SUBMM_FUNCTIONS_HPP_
#define SUBMM_FUNCTIONS_HPP_

// Concrete submodular functions. Every oracle here is normalized, f({}) = 0,
// either by construction or by subtracting the constant value at the empty
// set.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "submm/core.hpp"

namespace submm {

namespace detail {

inline void RequireNonnegative(std::span<const double> w, const char* what) {
  for (double x : w) {
    if (!(x >= 0.0)) {
      throw std::invalid_argument(std::string(what) + " must be nonnegative");
    }
  }
}

inline std::vector<double> UniformVector(std::size_t n, double lo, double hi,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> w(n);
  for (auto& x : w) x = dist(rng);
  return w;
}

// k distinct ids drawn uniformly, returned as a mask.
inline SubsetMask RandomSubset(std::size_t n, std::size_t k,
                               std::mt19937_64& rng) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(std::min(k, n));
  return SubsetMask::FromElements(n, ids);
}

}  // namespace detail

class ModularFn final : public SetFunction {
 public:
  explicit ModularFn(ModularVector w) : SetFunction(w.size()), w_(std::move(w)) {}
  std::string name() const override { return "modular"; }
  const ModularVector& weights() const { return w_; }

 protected:
  double Evaluate(const SubsetMask& x) const override { return w_(x); }

 private:
  ModularVector w_;
};

// f(X) = g(|X|) - g(0) for a concave g; covers sqrt(|X|), |X|^a, rank
// functions min(|X|, k) and the symmetric min(|X|, n - |X|).
class CardinalityFn final : public SetFunction {
 public:
  CardinalityFn(std::size_t n, std::function<double(std::size_t)> g,
                std::string name)
      : SetFunction(n), g_(std::move(g)), name_(std::move(name)), g0_(g_(0)) {}

  static std::unique_ptr<CardinalityFn> Power(std::size_t n, double a) {
    return std::make_unique<CardinalityFn>(
        n, [a](std::size_t k) { return std::pow(static_cast<double>(k), a); },
        "power");
  }
  static std::unique_ptr<CardinalityFn> Rank(std::size_t n, std::size_t k) {
    return std::make_unique<CardinalityFn>(
        n, [k](std::size_t m) { return static_cast<double>(std::min(m, k)); },
        "rank");
  }
  static std::unique_ptr<CardinalityFn> Symmetric(std::size_t n, double scale) {
    return std::make_unique<CardinalityFn>(
        n,
        [n, scale](std::size_t m) {
          return scale * static_cast<double>(std::min(m, n - m));
        },
        "symmetric");
  }

  std::string name() const override { return name_; }

 protected:
  double Evaluate(const SubsetMask& x) const override { return g_(x.size()) - g0_; }

 private:
  std::function<double(std::size_t)> g_;
  std::string name_;
  double g0_;
};

enum class ConcaveKind { kSqrt, kLog1p };
enum class ModularMode { kPlain, kComplement };

inline double ApplyConcave(ConcaveKind kind, double x) {
  // Guard tiny negative round-off from summing nonnegative weights.
  x = std::max(x, 0.0);
  return kind == ConcaveKind::kSqrt ? std::sqrt(x) : std::log1p(x);
}

// plain:      f(X) = g(w1(X)) + lambda * w2(X)
// complement: f(X) = g(w1(X)) + lambda * w2(V \ X) - lambda * w2(V)
class ConcaveOverModularFn final : public SetFunction {
 public:
  ConcaveOverModularFn(ModularVector w1, ModularVector w2,
                       ConcaveKind kind = ConcaveKind::kSqrt,
                       ModularMode mode = ModularMode::kPlain,
                       double lambda = 1.0)
      : SetFunction(w1.size()),
        w1_(std::move(w1)),
        w2_(std::move(w2)),
        kind_(kind),
        mode_(mode),
        lambda_(lambda) {
    if (w2_.size() != w1_.size()) {
      throw std::invalid_argument("w1 and w2 must have equal length");
    }
    detail::RequireNonnegative(w1_.values(), "w1");
  }

  std::string name() const override { return "concave_over_modular"; }
  ConcaveKind kind() const { return kind_; }
  ModularMode mode() const { return mode_; }

 protected:
  double Evaluate(const SubsetMask& x) const override {
    double linear = 0.0;
    double w1x = 0.0;
    for (std::size_t j : x.elements()) {
      w1x += w1_[j];
      linear += w2_[j];
    }
    // w2(V \ X) - w2(V) = -w2(X), so the complement mode only flips the sign.
    if (mode_ == ModularMode::kComplement) linear = -linear;
    return ApplyConcave(kind_, w1x) + lambda_ * linear;
  }

 private:
  ModularVector w1_;
  ModularVector w2_;
  ConcaveKind kind_;
  ModularMode mode_;
  double lambda_;
};

// f(X) = sum_i g(w(X cap C_i)) over clusters C_i (a partition or a cover).
class ClusteredConcaveModularFn final : public SetFunction {
 public:
  ClusteredConcaveModularFn(std::vector<std::vector<std::size_t>> clusters,
                            ModularVector w,
                            ConcaveKind kind = ConcaveKind::kSqrt)
      : SetFunction(w.size()),
        clusters_(std::move(clusters)),
        w_(std::move(w)),
        kind_(kind),
        membership_(w_.size()) {
    detail::RequireNonnegative(w_.values(), "cluster weights");
    if (clusters_.empty()) throw std::invalid_argument("no clusters given");
    for (std::size_t c = 0; c < clusters_.size(); ++c) {
      if (clusters_[c].empty()) throw std::invalid_argument("empty cluster");
      for (std::size_t j : clusters_[c]) {
        if (j >= w_.size()) throw std::invalid_argument("cluster element out of range");
        membership_[j].push_back(c);
      }
    }
  }

  std::string name() const override { return "clustered_concave_modular"; }
  const std::vector<std::vector<std::size_t>>& clusters() const { return clusters_; }

 protected:
  double Evaluate(const SubsetMask& x) const override {
    std::vector<double> mass(clusters_.size(), 0.0);
    for (std::size_t j : x.elements()) {
      for (std::size_t c : membership_[j]) mass[c] += w_[j];
    }
    double total = 0.0;
    for (double m : mass) total += ApplyConcave(kind_, m);
    return total;
  }

 private:
  std::vector<std::vector<std::size_t>> clusters_;
  ModularVector w_;
  ConcaveKind kind_;
  std::vector<std::vector<std::size_t>> membership_;
};

// f(X) = sqrt(w1(Gamma(X))) + lambda * w2(V \ X) - lambda * w2(V), where
// Gamma(X) is the right-side neighborhood of X in a bipartite graph.
class BipartiteNeighborhoodFn final : public SetFunction {
 public:
  BipartiteNeighborhoodFn(std::vector<std::vector<std::size_t>> adjacency,
                          ModularVector w1, ModularVector w2,
                          double lambda = 1.0)
      : SetFunction(adjacency.size()),
        adjacency_(std::move(adjacency)),
        w1_(std::move(w1)),
        w2_(std::move(w2)),
        lambda_(lambda) {
    detail::RequireNonnegative(w1_.values(), "w1");
    if (w2_.size() != adjacency_.size()) {
      throw std::invalid_argument("w2 must have one entry per left vertex");
    }
    for (const auto& nbrs : adjacency_) {
      for (std::size_t u : nbrs) {
        if (u >= w1_.size()) throw std::invalid_argument("neighbor out of range");
      }
    }
  }

  std::string name() const override { return "bipartite_neighborhood"; }

  SubsetMask neighborhood(const SubsetMask& x) const {
    SubsetMask gamma(w1_.size());
    for (std::size_t j : x.elements()) {
      for (std::size_t u : adjacency_[j]) gamma.insert(u);
    }
    return gamma;
  }

 protected:
  double Evaluate(const SubsetMask& x) const override {
    double cover = w1_(neighborhood(x));
    return std::sqrt(std::max(cover, 0.0)) - lambda_ * w2_(x);
  }

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  ModularVector w1_;
  ModularVector w2_;
  double lambda_;
};

// f(X) = min{|X|, |X cap complement(R)| + beta, alpha}.
class WorstCaseFn final : public SetFunction {
 public:
  WorstCaseFn(SubsetMask r, double alpha, double beta)
      : SetFunction(r.universe()), r_(std::move(r)), alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
      throw std::invalid_argument("alpha and beta must be positive");
    }
  }

  // alpha = n^(1/2 + eps), beta = n^(2 eps), |R| = round(alpha) capped at n.
  static std::unique_ptr<WorstCaseFn> Canonical(std::size_t n, double eps,
                                                std::mt19937_64& rng) {
    const double nd = static_cast<double>(n);
    const double alpha = std::pow(nd, 0.5 + eps);
    const double beta = std::pow(nd, 2.0 * eps);
    const auto r_size = static_cast<std::size_t>(std::llround(alpha));
    return std::make_unique<WorstCaseFn>(detail::RandomSubset(n, r_size, rng),
                                         alpha, beta);
  }

  std::string name() const override { return "worst_case"; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const SubsetMask& hidden_set() const { return r_; }

 protected:
  double Evaluate(const SubsetMask& x) const override {
    const double outside = static_cast<double>((x - r_).size());
    return std::min({static_cast<double>(x.size()), outside + beta_, alpha_});
  }

 private:
  SubsetMask r_;
  double alpha_;
  double beta_;
};

// Best-set function with planted optimal set R:
// f(X) = 1[X cap R nonempty] + sum_{j in X \ R} w_j.
// This is the monotone form; f(R) = 1 and every element of R has zero
// marginal gain once another element of R is present, so kappa_f = 1.
class BestSetFn final : public SetFunction {
 public:
  BestSetFn(SubsetMask r, ModularVector w)
      : SetFunction(r.universe()), r_(std::move(r)), w_(std::move(w)) {
    if (w_.size() != size()) throw std::invalid_argument("w must have length n");
    detail::RequireNonnegative(w_.values(), "w");
    if (r_.empty()) throw std::invalid_argument("planted set R must be nonempty");
  }

  std::string name() const override { return "best_set"; }
  const SubsetMask& planted_set() const { return r_; }

 protected:
  double Evaluate(const SubsetMask& x) const override {
    const double hit = (x & r_).empty() ? 0.0 : 1.0;
    return hit + w_(x - r_);
  }

 private:
  SubsetMask r_;
  ModularVector w_;
};

// f(X) = sum_{i in V} sum_{j in X} s_ij - lambda * sum_{i,j in X} s_ij.
class DiversityRelevanceFn final : public SetFunction {
 public:
  DiversityRelevanceFn(std::vector<std::vector<double>> s, double lambda)
      : SetFunction(s.size()), s_(std::move(s)), lambda_(lambda), relevance_(s_.size(), 0.0) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
    for (const auto& row : s_) {
      if (row.size() != s_.size()) throw std::invalid_argument("similarity matrix must be square");
      detail::RequireNonnegative(row, "similarities");
    }
    for (std::size_t i = 0; i < s_.size(); ++i) {
      for (std::size_t j = 0; j < s_.size(); ++j) relevance_[j] += s_[i][j];
    }
  }

  std::string name() const override { return "diversity_relevance"; }
  double lambda() const { return lambda_; }

 protected:
  double Evaluate(const SubsetMask& x) const override {
    const auto ids = x.elements();
    double rel = 0.0;
    double red = 0.0;
    for (std::size_t j : ids) {
      rel += relevance_[j];
      for (std::size_t i : ids) red += s_[i][j];
    }
    return rel - lambda_ * red;
  }

 private:
  std::vector<std::vector<double>> s_;
  double lambda_;
  std::vector<double> relevance_;
};

// Iwata's test function f(X) = |X| |V \ X| - sum_{j in X} (5 j - 2 n), with
// 1-based j.
class IwataTestFn final : public SetFunction {
 public:
  explicit IwataTestFn(std::size_t n) : SetFunction(n) {}
  std::string name() const override { return "iwata"; }

 protected:
  double Evaluate(const SubsetMask& x) const override {
    const auto n = static_cast<std::int64_t>(size());
    const auto k = static_cast<std::int64_t>(x.size());
    std::int64_t linear = 0;
    for (std::size_t j : x.elements()) {
      linear += 5 * (static_cast<std::int64_t>(j) + 1) - 2 * n;
    }
    return static_cast<double>(k * (n - k) - linear);
  }
};

// Symmetric similarity matrix, uniform [0,1] off the diagonal, unit diagonal.
inline std::vector<std::vector<double>> RandomSimilarity(std::size_t n,
                                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> s(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s[i][j] = s[j][i] = dist(rng);
  }
  return s;
}

// Builds a reproducible instance of a named family. Recognized names:
// modular, cm, ccm, bipartite, wc, bs, diversity, iwata, power, rank,
// symmetric. Family-specific knobs come from `params`; explicit weight
// vectors ("w", "w1", "w2") override the random draws. Set-valued params
// ("R", clusters) use 1-based ids.
inline std::unique_ptr<SetFunction> random_instance(const std::string& family,
                                                    std::size_t n,
                                                    std::uint64_t seed,
                                                    const nlohmann::json& params = nlohmann::json::object()) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  std::mt19937_64 rng(seed);
  auto get = [&](const char* key, double def) {
    return params.contains(key) ? params.at(key).get<double>() : def;
  };
  auto vec = [&](const char* key, double lo, double hi) {
    if (params.contains(key)) {
      auto v = params.at(key).get<std::vector<double>>();
      if (v.size() != n) throw std::invalid_argument(std::string(key) + " must have n entries");
      return v;
    }
    return detail::UniformVector(n, lo, hi, rng);
  };
  auto set_param = [&](const char* key, std::size_t default_size) {
    if (params.contains(key)) {
      SubsetMask r(n);
      for (auto id : params.at(key).get<std::vector<std::size_t>>()) {
        if (id == 0 || id > n) throw std::invalid_argument(std::string(key) + " id out of range");
        r.insert(id - 1);
      }
      return r;
    }
    return detail::RandomSubset(n, default_size, rng);
  };
  auto concave_kind = [&]() {
    std::string k = params.value("kind", "sqrt");
    if (k == "sqrt") return ConcaveKind::kSqrt;
    if (k == "log1p") return ConcaveKind::kLog1p;
    throw std::invalid_argument("unknown concave kind: " + k);
  };

  if (family == "modular") {
    return std::make_unique<ModularFn>(ModularVector(vec("w", get("lo", -1.0), get("hi", 1.0))));
  }
  if (family == "cm") {
    std::string mode = params.value("mode", "complement");
    ModularMode m;
    if (mode == "plain") {
      m = ModularMode::kPlain;
    } else if (mode == "complement") {
      m = ModularMode::kComplement;
    } else {
      throw std::invalid_argument("unknown modular mode: " + mode);
    }
    auto w1 = vec("w1", 0.0, 1.0);
    auto w2 = vec("w2", get("w2_lo", 0.0), get("w2_hi", 1.0));
    return std::make_unique<ConcaveOverModularFn>(ModularVector(std::move(w1)),
                                                  ModularVector(std::move(w2)),
                                                  concave_kind(), m, get("lambda", 1.0));
  }
  if (family == "ccm") {
    std::vector<std::vector<std::size_t>> clusters;
    if (params.contains("clusters")) {
      for (const auto& c : params.at("clusters")) {
        std::vector<std::size_t> members;
        for (auto id : c.get<std::vector<std::size_t>>()) {
          if (id == 0 || id > n) throw std::invalid_argument("cluster id out of range");
          members.push_back(id - 1);
        }
        clusters.push_back(std::move(members));
      }
    } else {
      auto k = static_cast<std::size_t>(get("clusters_count", std::max<double>(2.0, static_cast<double>(n) / 4.0)));
      k = std::clamp<std::size_t>(k, 1, n);
      std::vector<std::size_t> ids(n);
      std::iota(ids.begin(), ids.end(), 0);
      std::shuffle(ids.begin(), ids.end(), rng);
      clusters.resize(k);
      for (std::size_t i = 0; i < n; ++i) clusters[i % k].push_back(ids[i]);
    }
    auto w = vec("w", 0.0, 1.0);
    return std::make_unique<ClusteredConcaveModularFn>(std::move(clusters),
                                                       ModularVector(std::move(w)),
                                                       concave_kind());
  }
  if (family == "bipartite") {
    const auto right = static_cast<std::size_t>(get("right", static_cast<double>(n)));
    const double degree = get("degree", 3.0);
    if (right == 0) throw std::invalid_argument("right vertex set must be nonempty");
    const double p = std::min(1.0, degree / static_cast<double>(right));
    std::bernoulli_distribution edge(p);
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto& nbrs : adj) {
      for (std::size_t u = 0; u < right; ++u) {
        if (edge(rng)) nbrs.push_back(u);
      }
    }
    auto w1 = detail::UniformVector(right, 0.0, 1.0, rng);
    auto w2 = vec("w2", 0.0, 1.0);
    return std::make_unique<BipartiteNeighborhoodFn>(std::move(adj), ModularVector(std::move(w1)),
                                                     ModularVector(std::move(w2)), get("lambda", 1.0));
  }
  if (family == "wc") {
    const double eps = get("eps", 0.1);
    if (params.contains("R")) {
      const double nd = static_cast<double>(n);
      return std::make_unique<WorstCaseFn>(set_param("R", 0), std::pow(nd, 0.5 + eps),
                                           std::pow(nd, 2.0 * eps));
    }
    return WorstCaseFn::Canonical(n, eps, rng);
  }
  if (family == "bs") {
    auto default_size = static_cast<std::size_t>(get("r", std::max<double>(2.0, static_cast<double>(n) / 4.0)));
    SubsetMask r = set_param("R", default_size);
    auto w = vec("w", 0.0, 1.0);
    return std::make_unique<BestSetFn>(std::move(r), ModularVector(std::move(w)));
  }
  if (family == "diversity") {
    return std::make_unique<DiversityRelevanceFn>(RandomSimilarity(n, rng), get("lambda", 0.5));
  }
  if (family == "iwata") return std::make_unique<IwataTestFn>(n);
  if (family == "power") return CardinalityFn::Power(n, get("a", 0.5));
  if (family == "rank") return CardinalityFn::Rank(n, static_cast<std::size_t>(get("k", 2.0)));
  if (family == "symmetric") return CardinalityFn::Symmetric(n, get("scale", 1.0));
  throw std::invalid_argument("unknown function family: " + family);
}

}  // namespace submm

#endif  // SUBMM_FUNCTIONS_HPP_
