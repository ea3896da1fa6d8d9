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

#ifndef SUBMM_CORE_HPP_
#define SUBMM_CORE_HPP_

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace submm {

// Absolute tolerance for every sign and equality test on function values.
inline constexpr double kTolerance = 1e-9;

// Exhaustive checks refuse ground sets larger than this.
inline constexpr std::size_t kMaxExhaustiveN = 20;

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A subset of the ground set {0, ..., n-1}. Bits past n are always zero and
// the cardinality is kept in sync with the bit words.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  SubsetMask(std::size_t n, std::initializer_list<std::size_t> elements)
      : SubsetMask(n) {
    for (std::size_t j : elements) insert(j);
  }

  static SubsetMask Full(std::size_t n) {
    SubsetMask m(n);
    for (auto& w : m.words_) w = ~std::uint64_t{0};
    m.TrimTail();
    m.count_ = n;
    return m;
  }

  static SubsetMask FromElements(std::size_t n,
                                 std::span<const std::size_t> elements) {
    SubsetMask m(n);
    for (std::size_t j : elements) m.insert(j);
    return m;
  }

  // Low bits of `bits` select elements; requires n <= 64.
  static SubsetMask FromBits(std::size_t n, std::uint64_t bits) {
    if (n > 64) throw std::invalid_argument("FromBits requires n <= 64");
    SubsetMask m(n);
    if (n == 0) return m;
    if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
    m.words_[0] = bits;
    m.count_ = static_cast<std::size_t>(std::popcount(bits));
    return m;
  }

  std::size_t universe() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::size_t j) const {
    CheckIndex(j);
    return (words_[j >> 6] >> (j & 63)) & 1u;
  }

  void insert(std::size_t j) {
    CheckIndex(j);
    std::uint64_t bit = std::uint64_t{1} << (j & 63);
    if (!(words_[j >> 6] & bit)) {
      words_[j >> 6] |= bit;
      ++count_;
    }
  }

  void erase(std::size_t j) {
    CheckIndex(j);
    std::uint64_t bit = std::uint64_t{1} << (j & 63);
    if (words_[j >> 6] & bit) {
      words_[j >> 6] &= ~bit;
      --count_;
    }
  }

  void flip(std::size_t j) {
    if (contains(j)) {
      erase(j);
    } else {
      insert(j);
    }
  }

  SubsetMask with(std::size_t j) const {
    SubsetMask m = *this;
    m.insert(j);
    return m;
  }
  SubsetMask without(std::size_t j) const {
    SubsetMask m = *this;
    m.erase(j);
    return m;
  }

  SubsetMask complement() const {
    SubsetMask m = *this;
    for (auto& w : m.words_) w = ~w;
    m.TrimTail();
    m.count_ = n_ - count_;
    return m;
  }

  bool is_subset_of(const SubsetMask& other) const {
    CheckSameUniverse(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  SubsetMask& operator|=(const SubsetMask& o) { return Combine(o, [](auto a, auto b) { return a | b; }); }
  SubsetMask& operator&=(const SubsetMask& o) { return Combine(o, [](auto a, auto b) { return a & b; }); }
  SubsetMask& operator-=(const SubsetMask& o) { return Combine(o, [](auto a, auto b) { return a & ~b; }); }
  SubsetMask& operator^=(const SubsetMask& o) { return Combine(o, [](auto a, auto b) { return a ^ b; }); }

  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
  friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }
  friend SubsetMask operator^(SubsetMask a, const SubsetMask& b) { return a ^= b; }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  // Orders by universe size, then by the word vector; only used for sorting.
  friend bool operator<(const SubsetMask& a, const SubsetMask& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return std::lexicographical_compare(a.words_.rbegin(), a.words_.rend(),
                                        b.words_.rbegin(), b.words_.rend());
  }

  // Ascending 0-based ids.
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  // 1-based ids, the external convention.
  std::vector<std::size_t> one_based() const {
    auto e = elements();
    for (auto& j : e) ++j;
    return e;
  }

  std::uint64_t low_bits() const { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t j : one_based()) {
      if (!first) s += ",";
      s += std::to_string(j);
      first = false;
    }
    return s + "}";
  }

 private:
  void CheckIndex(std::size_t j) const {
    if (j >= n_) {
      throw std::invalid_argument("element id " + std::to_string(j) +
                                  " out of range for ground set of size " +
                                  std::to_string(n_));
    }
  }
  void CheckSameUniverse(const SubsetMask& o) const {
    if (o.n_ != n_) throw std::invalid_argument("subset universe mismatch");
  }
  void TrimTail() {
    if (n_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }
  }
  template <typename Op>
  SubsetMask& Combine(const SubsetMask& o, Op op) {
    CheckSameUniverse(o);
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] = op(words_[i], o.words_[i]);
      count_ += static_cast<std::size_t>(std::popcount(words_[i]));
    }
    TrimTail();
    return *this;
  }

  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

// Normalized modular function w(X) = sum_{j in X} w[j].
class ModularVector {
 public:
  ModularVector() = default;
  explicit ModularVector(std::size_t n, double fill = 0.0) : w_(n, fill) {}
  explicit ModularVector(std::vector<double> w) : w_(std::move(w)) {}
  ModularVector(std::initializer_list<double> w) : w_(w) {}

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t j) const { return w_[j]; }
  double& operator[](std::size_t j) { return w_[j]; }
  std::span<const double> values() const { return w_; }

  double operator()(const SubsetMask& x) const {
    double s = 0.0;
    for (std::size_t j : x.elements()) s += w_[j];
    return s;
  }

 private:
  std::vector<double> w_;
};

// Evaluation interface for a normalized set function f: 2^V -> R.
//
// Implementations override Evaluate(); callers go through operator(), which
// counts calls. The counter is the only mutable state and is atomic, so one
// oracle may be shared across threads.
class SetFunction {
 public:
  explicit SetFunction(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("ground set must be nonempty");
  }
  SetFunction(const SetFunction&) = delete;
  SetFunction& operator=(const SetFunction&) = delete;
  virtual ~SetFunction() = default;

  std::size_t size() const { return n_; }

  double operator()(const SubsetMask& x) const {
    if (x.universe() != n_) {
      throw std::invalid_argument("subset universe does not match oracle");
    }
    eval_count_.fetch_add(1, std::memory_order_relaxed);
    return Evaluate(x);
  }

  std::uint64_t eval_count() const {
    return eval_count_.load(std::memory_order_relaxed);
  }
  void reset_eval_count() const { eval_count_.store(0, std::memory_order_relaxed); }

  virtual std::string name() const = 0;

  SubsetMask empty_set() const { return SubsetMask(n_); }
  SubsetMask ground_set() const { return SubsetMask::Full(n_); }

 protected:
  virtual double Evaluate(const SubsetMask& x) const = 0;

 private:
  std::size_t n_;
  mutable std::atomic<std::uint64_t> eval_count_{0};
};

// Adapts a callable; used for ad-hoc functions in tests and tools.
class LambdaFunction final : public SetFunction {
 public:
  using Fn = std::function<double(const SubsetMask&)>;
  LambdaFunction(std::size_t n, Fn fn, std::string name = "lambda")
      : SetFunction(n), fn_(std::move(fn)), name_(std::move(name)) {}
  std::string name() const override { return name_; }

 protected:
  double Evaluate(const SubsetMask& x) const override { return fn_(x); }

 private:
  Fn fn_;
  std::string name_;
};

// f(j | S) = f(S + j) - f(S); zero without oracle calls when j is in S.
inline double gain(const SetFunction& f, std::size_t j, const SubsetMask& s) {
  if (j >= f.size()) {
    throw std::invalid_argument("element id " + std::to_string(j) +
                                " out of range");
  }
  if (s.contains(j)) return 0.0;
  return f(s.with(j)) - f(s);
}

// f(j | S \ j): the loss of removing j from S (or the gain of j w.r.t. S\j).
inline double removal_gain(const SetFunction& f, std::size_t j,
                           const SubsetMask& s) {
  if (!s.contains(j)) return gain(f, j, s);
  return f(s) - f(s.without(j));
}

// Tabulates f over all 2^n subsets, indexed by bit pattern.
inline std::vector<double> tabulate(const SetFunction& f) {
  const std::size_t n = f.size();
  if (n > kMaxExhaustiveN) {
    throw BudgetError("exhaustive enumeration refused: n = " +
                      std::to_string(n) + " exceeds " +
                      std::to_string(kMaxExhaustiveN));
  }
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < table.size(); ++bits) {
    table[bits] = f(SubsetMask::FromBits(n, bits));
  }
  return table;
}

// Exhaustive diminishing-returns check. Uses the equivalent local form
// f(S+i) + f(S+j) >= f(S+i+j) + f(S) over all S and i, j outside S.
inline bool is_submodular(const SetFunction& f, double tol = kTolerance) {
  const std::size_t n = f.size();
  auto table = tabulate(f);
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t bi = std::uint64_t{1} << i;
      if (s & bi) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        std::uint64_t bj = std::uint64_t{1} << j;
        if (s & bj) continue;
        if (table[s | bi] + table[s | bj] <
            table[s | bi | bj] + table[s] - tol) {
          return false;
        }
      }
    }
  }
  return true;
}

// Exhaustive monotonicity check f(S) <= f(S + j).
inline bool is_monotone(const SetFunction& f, double tol = kTolerance) {
  const std::size_t n = f.size();
  auto table = tabulate(f);
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t bj = std::uint64_t{1} << j;
      if (!(s & bj) && table[s | bj] < table[s] - tol) return false;
    }
  }
  return true;
}

// Total curvature kappa_f = 1 - min_j f(j | V \ j) / f(j) of a monotone
// function. Throws std::domain_error when some f(j) <= 0 or a singleton-level
// probe shows the function decreasing.
inline double curvature(const SetFunction& f, double tol = kTolerance) {
  const std::size_t n = f.size();
  const SubsetMask empty = f.empty_set();
  const SubsetMask full = f.ground_set();
  const double f_full = f(full);
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double singleton = f(empty.with(j));
    if (singleton <= tol) {
      throw std::domain_error("curvature undefined: f(" + std::to_string(j + 1) +
                              ") <= 0");
    }
    double tail = f_full - f(full.without(j));
    if (tail < -tol) {
      throw std::domain_error("curvature undefined: function is not monotone at element " +
                              std::to_string(j + 1));
    }
    min_ratio = std::min(min_ratio, tail / singleton);
  }
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

// One-flip scan: true when no single insertion or deletion lowers f by more
// than `slack`.
inline bool is_local_minimum(const SetFunction& f, const SubsetMask& x,
                             double slack = kTolerance) {
  const double fx = f(x);
  for (std::size_t j = 0; j < f.size(); ++j) {
    SubsetMask y = x;
    y.flip(j);
    if (f(y) < fx - slack) return false;
  }
  return true;
}

inline bool is_local_maximum(const SetFunction& f, const SubsetMask& x,
                             double slack = kTolerance) {
  const double fx = f(x);
  for (std::size_t j = 0; j < f.size(); ++j) {
    SubsetMask y = x;
    y.flip(j);
    if (f(y) > fx + slack) return false;
  }
  return true;
}

}  // namespace submm

#endif  // SUBMM_CORE_HPP_
