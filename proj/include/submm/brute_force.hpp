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

#ifndef SUBMM_BRUTE_FORCE_HPP_
#define SUBMM_BRUTE_FORCE_HPP_

// Exhaustive ground truth at desk scale. Subsets are visited in Gray-code
// order so consecutive sets differ in one element.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "submm/core.hpp"
#include "submm/linopt.hpp"

namespace submm {

// Hard cap when the caller passes the override flag.
inline constexpr std::size_t kMaxOverrideN = 26;

struct BruteForceResult {
  double optimum_value = 0.0;
  // Every feasible set within kTolerance of the optimum, ascending by
  // cardinality then by bit pattern.
  std::vector<SubsetMask> optimizers;
  // One-flip local optima in the same sense as the optimum; only filled for
  // the unconstrained family.
  std::vector<SubsetMask> local_optima;
  // Number of feasible sets evaluated.
  std::uint64_t enumerated = 0;

  // Optimizer with the fewest elements.
  const SubsetMask& smallest_optimizer() const { return optimizers.front(); }
};

namespace detail {

inline void CheckBudget(std::size_t n, bool allow_large) {
  const std::size_t cap = allow_large ? kMaxOverrideN : kMaxExhaustiveN;
  if (n > cap) {
    throw BudgetError("brute force refused: n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap) + (allow_large ? "" : " (pass the override flag to raise it)"));
  }
}

inline BruteForceResult BruteForce(const SetFunction& f, const ConstraintFamily& c, bool maximize,
                                   bool allow_large) {
  const std::size_t n = f.size();
  if (c.size() != n) throw std::invalid_argument("constraint ground set does not match oracle");
  CheckBudget(n, allow_large);
  const double sign = maximize ? -1.0 : 1.0;
  const std::uint64_t total = std::uint64_t{1} << n;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // Values in the minimization sense, indexed by bit pattern; NaN = infeasible.
  std::vector<double> table(total, nan);
  BruteForceResult r;
  SubsetMask x(n);
  std::uint64_t gray = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i > 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(i));
      x.flip(bit);
      gray ^= std::uint64_t{1} << bit;
    }
    if (!is_feasible(x, c)) continue;
    table[gray] = sign * f(x);
    ++r.enumerated;
  }
  if (r.enumerated == 0) throw InfeasibleError("constraint family has no feasible set");
  double best = std::numeric_limits<double>::infinity();
  for (double v : table) {
    if (!std::isnan(v) && v < best) best = v;
  }
  r.optimum_value = sign * best;
  std::vector<std::uint64_t> opt_bits;
  for (std::uint64_t b = 0; b < total; ++b) {
    if (!std::isnan(table[b]) && table[b] <= best + kTolerance) opt_bits.push_back(b);
  }
  std::stable_sort(opt_bits.begin(), opt_bits.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (auto b : opt_bits) r.optimizers.push_back(SubsetMask::FromBits(n, b));
  if (c.kind() == ConstraintKind::kUnconstrained) {
    for (std::uint64_t b = 0; b < total; ++b) {
      bool local = true;
      for (std::size_t j = 0; j < n && local; ++j) {
        if (table[b ^ (std::uint64_t{1} << j)] < table[b] - kTolerance) local = false;
      }
      if (local) r.local_optima.push_back(SubsetMask::FromBits(n, b));
    }
  }
  return r;
}

}  // namespace detail

inline BruteForceResult brute_minimize(const SetFunction& f, const ConstraintFamily& c,
                                       bool allow_large = false) {
  return detail::BruteForce(f, c, false, allow_large);
}

inline BruteForceResult brute_maximize(const SetFunction& f, const ConstraintFamily& c,
                                       bool allow_large = false) {
  return detail::BruteForce(f, c, true, allow_large);
}

inline BruteForceResult brute_minimize(const SetFunction& f, bool allow_large = false) {
  return brute_minimize(f, ConstraintFamily::Unconstrained(f.size()), allow_large);
}

inline BruteForceResult brute_maximize(const SetFunction& f, bool allow_large = false) {
  return brute_maximize(f, ConstraintFamily::Unconstrained(f.size()), allow_large);
}

// Ratio of an achieved value to the optimum; 1 when both vanish.
inline double approximation_ratio(double achieved, double optimum) {
  if (std::abs(optimum) <= kTolerance) {
    return std::abs(achieved) <= kTolerance ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return achieved / optimum;
}

}  // namespace submm

#endif  // SUBMM_BRUTE_FORCE_HPP_
