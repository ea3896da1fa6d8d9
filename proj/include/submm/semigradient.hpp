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

#ifndef SUBMM_SEMIGRADIENT_HPP_
#define SUBMM_SEMIGRADIENT_HPP_

// Sub- and supergradients of submodular functions and the tight modular
// bounds they induce.
//
// A permutation whose first |Y| entries are exactly Y yields an extreme point
// of the subdifferential at Y via the chain gains
//   h(order[i]) = f(S_i) - f(S_{i-1}),  S_i = {order[0..i]}.
// The three constructive supergradients at Y are
//   grow:   f(j | V\j) for j in Y,    f(j | Y)  otherwise
//   shrink: f(j | Y\j) for j in Y,    f(j | {}) otherwise
//   bar:    f(j | V\j) for j in Y,    f(j | {}) otherwise

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "submm/core.hpp"

namespace submm {

// A permutation of V with a distinguished prefix: order[0..anchor_prefix) is
// the anchor set.
class Permutation {
 public:
  Permutation(std::vector<std::size_t> order, std::size_t anchor_prefix)
      : order_(std::move(order)), anchor_prefix_(anchor_prefix) {
    const std::size_t n = order_.size();
    if (n == 0) throw std::invalid_argument("permutation must be nonempty");
    if (anchor_prefix_ > n) throw std::invalid_argument("anchor prefix longer than permutation");
    std::vector<bool> seen(n, false);
    for (std::size_t j : order_) {
      if (j >= n || seen[j]) throw std::invalid_argument("malformed permutation");
      seen[j] = true;
    }
  }

  // Identity order with an empty anchor.
  static Permutation Identity(std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    return Permutation(std::move(order), 0);
  }

  // Places `anchor` first (ascending ids), then the rest ascending.
  static Permutation AnchoredAt(const SubsetMask& anchor) {
    std::vector<std::size_t> order = anchor.elements();
    for (std::size_t j : anchor.complement().elements()) order.push_back(j);
    return Permutation(std::move(order), anchor.size());
  }

  std::size_t size() const { return order_.size(); }
  std::size_t anchor_prefix() const { return anchor_prefix_; }
  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t operator[](std::size_t i) const { return order_[i]; }

  SubsetMask anchor() const { return prefix(anchor_prefix_); }

  // S_i = first i elements.
  SubsetMask prefix(std::size_t i) const {
    SubsetMask s(order_.size());
    for (std::size_t k = 0; k < i; ++k) s.insert(order_[k]);
    return s;
  }

  // True when the first |y| entries are exactly y.
  bool is_anchored_at(const SubsetMask& y) const {
    if (y.universe() != order_.size()) return false;
    if (anchor_prefix_ != y.size()) return false;
    for (std::size_t k = 0; k < anchor_prefix_; ++k) {
      if (!y.contains(order_[k])) return false;
    }
    return true;
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t anchor_prefix_;
};

struct SubgradientVector {
  ModularVector h;
  SubsetMask anchor;
  Permutation source;
  // f at every chain prefix S_0..S_n, reused by callers that scan the chain.
  std::vector<double> chain_values;
};

enum class SupergradientKind { kGrow, kShrink, kBar };

inline std::string to_string(SupergradientKind k) {
  switch (k) {
    case SupergradientKind::kGrow: return "grow";
    case SupergradientKind::kShrink: return "shrink";
    case SupergradientKind::kBar: return "bar";
  }
  return "?";
}

struct SupergradientVector {
  ModularVector g;
  SubsetMask anchor;
  SupergradientKind kind;
};

// Extreme-point subgradient from a chain. Costs n + 1 evaluations.
inline SubgradientVector subgradient_from_permutation(const SetFunction& f,
                                                      const Permutation& sigma) {
  const std::size_t n = f.size();
  if (sigma.size() != n) throw std::invalid_argument("permutation size does not match oracle");
  ModularVector h(n);
  std::vector<double> chain;
  chain.reserve(n + 1);
  SubsetMask s(n);
  double prev = f(s);
  chain.push_back(prev);
  for (std::size_t i = 0; i < n; ++i) {
    s.insert(sigma[i]);
    double cur = f(s);
    h[sigma[i]] = cur - prev;
    chain.push_back(cur);
    prev = cur;
  }
  return SubgradientVector{std::move(h), sigma.anchor(), sigma, std::move(chain)};
}

// Supergradient entries computed on first access and memoized. The values
// f(j | V\j) and f(j | {}) do not depend on the anchor, so one instance can
// be re-anchored across iterations without recomputing them.
class LazySupergradient {
 public:
  LazySupergradient(const SetFunction& f, SupergradientKind kind)
      : f_(f),
        kind_(kind),
        n_(f.size()),
        anchor_(n_),
        tail_(n_),
        head_(n_),
        local_(n_) {}

  void set_anchor(const SubsetMask& y) {
    if (y.universe() != n_) throw std::invalid_argument("anchor universe mismatch");
    anchor_ = y;
    f_anchor_.reset();
    std::fill(local_.begin(), local_.end(), std::nullopt);
  }

  const SubsetMask& anchor() const { return anchor_; }
  SupergradientKind kind() const { return kind_; }

  double operator[](std::size_t j) {
    if (j >= n_) throw std::invalid_argument("element id out of range");
    const bool in = anchor_.contains(j);
    switch (kind_) {
      case SupergradientKind::kGrow:
        return in ? Tail(j) : Local(j);
      case SupergradientKind::kShrink:
        return in ? Local(j) : Head(j);
      case SupergradientKind::kBar:
        return in ? Tail(j) : Head(j);
    }
    return 0.0;
  }

  double anchor_value() {
    if (!f_anchor_) f_anchor_ = f_(anchor_);
    return *f_anchor_;
  }

  SupergradientVector materialize() {
    ModularVector g(n_);
    for (std::size_t j = 0; j < n_; ++j) g[j] = (*this)[j];
    return SupergradientVector{std::move(g), anchor_, kind_};
  }

 private:
  // f(j | V \ j)
  double Tail(std::size_t j) {
    if (!tail_[j]) {
      if (!f_full_) f_full_ = f_(SubsetMask::Full(n_));
      tail_[j] = *f_full_ - f_(SubsetMask::Full(n_).without(j));
    }
    return *tail_[j];
  }
  // f(j | {})
  double Head(std::size_t j) {
    if (!head_[j]) {
      SubsetMask s(n_);
      s.insert(j);
      head_[j] = f_(s);
    }
    return *head_[j];
  }
  // f(j | Y) for j outside Y, f(j | Y \ j) for j inside.
  double Local(std::size_t j) {
    if (!local_[j]) {
      if (anchor_.contains(j)) {
        local_[j] = anchor_value() - f_(anchor_.without(j));
      } else {
        local_[j] = f_(anchor_.with(j)) - anchor_value();
      }
    }
    return *local_[j];
  }

  const SetFunction& f_;
  SupergradientKind kind_;
  std::size_t n_;
  SubsetMask anchor_;
  std::optional<double> f_anchor_;
  std::optional<double> f_full_;
  std::vector<std::optional<double>> tail_;
  std::vector<std::optional<double>> head_;
  std::vector<std::optional<double>> local_;
};

inline SupergradientVector supergradient(const SetFunction& f, const SubsetMask& y,
                                         SupergradientKind kind) {
  if (y.universe() != f.size()) throw std::invalid_argument("anchor universe mismatch");
  LazySupergradient lazy(f, kind);
  lazy.set_anchor(y);
  return lazy.materialize();
}

enum class BoundDirection { kUpper, kLower };

// m(X) = f(Y) + v(X) - v(Y); tight at the anchor Y.
struct ModularBound {
  double base;
  ModularVector vector;
  SubsetMask anchor;
  BoundDirection direction;

  double operator()(const SubsetMask& x) const { return bound_eval(*this, x); }

  friend double bound_eval(const ModularBound& b, const SubsetMask& x) {
    return b.base + b.vector(x) - b.vector(b.anchor);
  }
};

inline ModularBound upper_bound(const SetFunction& f, const SupergradientVector& g) {
  return ModularBound{f(g.anchor), g.g, g.anchor, BoundDirection::kUpper};
}

inline ModularBound lower_bound(const SetFunction& f, const SubgradientVector& h) {
  return ModularBound{f(h.anchor), h.h, h.anchor, BoundDirection::kLower};
}

}  // namespace submm

#endif  // SUBMM_SEMIGRADIENT_HPP_
