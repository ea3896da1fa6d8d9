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

#ifndef SUBMM_TESTS_TEST_UTIL_HPP_
#define SUBMM_TESTS_TEST_UTIL_HPP_

// Reference computations written directly from the definitions, kept apart
// from the library code paths they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "submm/submm.hpp"

namespace submm::testing {

// Builds the set from 1-based ids.
inline SubsetMask Ids(std::size_t n, std::initializer_list<std::size_t> one_based) {
  SubsetMask s(n);
  for (auto id : one_based) s.insert(id - 1);
  return s;
}

inline std::unique_ptr<ConcaveOverModularFn> WorkedExample() {
  return std::make_unique<ConcaveOverModularFn>(ModularVector({3, 9, 17, 14, 14, 10, 16, 4, 13, 2}),
                                                ModularVector({-9, 4, 6, -1, 10, -4, -6, -1, 2, -8}),
                                                ConcaveKind::kSqrt, ModularMode::kPlain, 1.0);
}

struct Extremum {
  double value;
  std::vector<SubsetMask> sets;
};

// Plain loop over all 2^n subsets filtered by `keep`; `sign` = +1 minimizes.
inline Extremum NaiveOptimum(const SetFunction& f, double sign,
                             const std::function<bool(const SubsetMask&)>& keep = nullptr) {
  const std::size_t n = f.size();
  Extremum e{std::numeric_limits<double>::infinity(), {}};
  std::vector<std::pair<double, SubsetMask>> all;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    SubsetMask x = SubsetMask::FromBits(n, b);
    if (keep && !keep(x)) continue;
    const double v = sign * f(x);
    all.emplace_back(v, x);
    e.value = std::min(e.value, v);
  }
  for (auto& [v, x] : all) {
    if (v <= e.value + 1e-9) e.sets.push_back(x);
  }
  e.value *= sign;
  return e;
}

// Zoo instances with n elements; `which` cycles through every family.
inline const std::vector<std::string>& ZooFamilies() {
  static const std::vector<std::string> f{"modular", "cm",   "cm_plain", "ccm",   "bipartite", "wc",
                                          "bs",      "diversity", "iwata", "power", "rank",      "symmetric"};
  return f;
}

inline std::unique_ptr<SetFunction> Zoo(const std::string& family, std::size_t n, std::uint64_t seed) {
  if (family == "cm_plain") {
    return random_instance("cm", n, seed, {{"mode", "plain"}, {"w2_lo", -1.0}, {"w2_hi", 1.0}});
  }
  if (family == "cm") return random_instance("cm", n, seed, {{"lambda", 0.5 + 0.25 * static_cast<double>(seed % 8)}});
  if (family == "bipartite") return random_instance("bipartite", n, seed, {{"lambda", 1.0}});
  if (family == "diversity") return random_instance("diversity", n, seed, {{"lambda", 0.5 + 0.1 * static_cast<double>(seed % 6)}});
  if (family == "symmetric") return random_instance("symmetric", n, seed, {{"scale", 1.5}});
  if (family == "rank") return random_instance("rank", n, seed, {{"k", 3}});
  return random_instance(family, n, seed);
}

// Weighted cut of a random graph: symmetric, submodular, nonnegative.
inline std::unique_ptr<LambdaFunction> RandomCut(std::size_t n, std::uint64_t seed, double density = 0.4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (u(rng) < density) edges.emplace_back(a, b, 0.1 + u(rng));
    }
  }
  return std::make_unique<LambdaFunction>(
      n,
      [edges](const SubsetMask& x) {
        double v = 0.0;
        for (const auto& [a, b, w] : edges) {
          if (x.contains(a) != x.contains(b)) v += w;
        }
        return v;
      },
      "cut");
}

// Mean and standard error.
inline std::pair<double, double> MeanSe(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return {m, sd / std::sqrt(static_cast<double>(v.size()))};
}

}  // namespace submm::testing

#endif  // SUBMM_TESTS_TEST_UTIL_HPP_
