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

#ifndef SUBMM_MMAX_HPP_
#define SUBMM_MMAX_HPP_

// Minorize-maximize for submodular maximization.
//
// Every schedule here differs only in how it orders the permutation whose
// chain defines the subgradient h at the current set X; the step itself is
// always X' = argmax_{X' in C} h(X'). Because h is tight along the whole chain,
// f(X') >= h(X') >= f(S_i) for every prefix S_i of the permutation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "submm/brute_force.hpp"
#include "submm/core.hpp"
#include "submm/linopt.hpp"
#include "submm/mmin.hpp"
#include "submm/semigradient.hpp"

namespace submm {

enum class Schedule { kRP, kRA, kRLS, kDLS, kBG, kRG, kGreedy, kKnapsackGreedy, kExternal };

inline std::string to_string(Schedule s) {
  switch (s) {
    case Schedule::kRP: return "rp";
    case Schedule::kRA: return "ra";
    case Schedule::kRLS: return "rls";
    case Schedule::kDLS: return "dls";
    case Schedule::kBG: return "bg";
    case Schedule::kRG: return "rg";
    case Schedule::kGreedy: return "greedy";
    case Schedule::kKnapsackGreedy: return "knapsack";
    case Schedule::kExternal: return "external";
  }
  return "?";
}

inline Schedule schedule_from_string(const std::string& s) {
  for (Schedule k : {Schedule::kRP, Schedule::kRA, Schedule::kRLS, Schedule::kDLS, Schedule::kBG, Schedule::kRG,
                     Schedule::kGreedy, Schedule::kKnapsackGreedy, Schedule::kExternal}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown schedule: " + s);
}

struct ScheduleConfig {
  double eta = 0.01;
  std::uint64_t seed = 0;
  std::size_t repetitions = 1;
  // Fill factor_certificate by brute force (n <= 20).
  bool certify = false;
};

struct MaximizeReport {
  SubsetMask solution;
  double value = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  Schedule schedule = Schedule::kRP;
  std::optional<std::uint64_t> seed;
  // f(solution) / OPT when brute force ran.
  std::optional<double> factor_certificate;
  std::optional<double> optimum_value;
  // Terminal iterate of the local-search schedules, and whether it passes
  // the eta-slack one-flip scan.
  std::optional<SubsetMask> local_optimum;
  bool local_max = false;
  // Value of the set the wrapped algorithm would return on its own (the
  // bi-directional greedy set, the plain greedy set, the external set).
  std::optional<double> reference_value;
  // Guaranteed approximation factor for this schedule and constraint.
  std::optional<double> bound;
  std::optional<double> curvature;
  std::size_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  std::vector<std::string> warnings;
};

// log(n) / log(1 + eta): the outer-iteration cap from an initial set holding
// at least OPT / n.
inline double iteration_cap(std::size_t n, double eta) {
  return std::log(static_cast<double>(n)) / std::log1p(eta);
}

// (1/kappa)(1 - e^-kappa), continuous at kappa = 0.
inline double cardinality_greedy_bound(double kappa) {
  if (kappa < 1e-12) return 1.0;
  return (1.0 - std::exp(-kappa)) / kappa;
}

inline double matroid_greedy_bound(std::size_t p, double kappa) { return 1.0 / (static_cast<double>(p) + kappa); }

// (1/kappa)(1 - ((K - kappa)/K)^k), continuous at kappa = 0 (limit k/K).
inline double down_monotone_greedy_bound(std::size_t big_k, std::size_t small_k, double kappa) {
  const double kk = static_cast<double>(big_k);
  if (kappa < 1e-12) return static_cast<double>(small_k) / kk;
  return (1.0 - std::pow((kk - kappa) / kk, static_cast<double>(small_k))) / kappa;
}

inline const double kKnapsackBound = 1.0 - 1.0 / std::sqrt(std::exp(1.0));
inline const double kKnapsackEnumerationBound = 1.0 - 1.0 / std::exp(1.0);

namespace detail {

using Rng = std::mt19937_64;

struct MaxStepResult {
  SubsetMask next;
  SubgradientVector h;
};

inline MaxStepResult MaxStep(const SetFunction& f, const Permutation& sigma, const SubsetMask& current,
                             const ConstraintFamily& c) {
  if (!sigma.is_anchored_at(current)) {
    throw std::logic_error("subgradient permutation is not anchored at the current set");
  }
  SubgradientVector h = subgradient_from_permutation(f, sigma);
  SubsetMask next = maximize_modular(h.h, c).set;
  return {std::move(next), std::move(h)};
}

// Accept x' over x when f(x') >= (1 + eta) f(x) with a strict increase.
inline bool Improves(double fnext, double fx, double eta) {
  return fnext > fx + kTolerance && fnext >= (1.0 + eta) * fx;
}

inline void CheckNonnegative(const SetFunction& f, MaximizeReport& r) {
  const std::size_t n = f.size();
  bool ok = f(f.empty_set()) >= -kTolerance && f(f.ground_set()) >= -kTolerance;
  for (std::size_t j = 0; j < n && ok; ++j) {
    if (f(f.empty_set().with(j)) < -kTolerance) ok = false;
  }
  if (!ok) r.warnings.push_back("nonnegativity precondition violated; guarantees do not apply");
}

inline void CheckMonotone(const SetFunction& f) {
  const SubsetMask full = f.ground_set();
  const double f_full = f(full);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f(f.empty_set().with(j)) < -kTolerance || f_full - f(full.without(j)) < -kTolerance) {
      throw std::domain_error("function is not monotone nondecreasing");
    }
  }
}

// Anchor block first, then the rest; each block shuffled.
inline Permutation RandomAnchored(const SubsetMask& x, Rng& rng) {
  std::vector<std::size_t> in = x.elements();
  std::vector<std::size_t> out = x.complement().elements();
  std::shuffle(in.begin(), in.end(), rng);
  std::shuffle(out.begin(), out.end(), rng);
  in.insert(in.end(), out.begin(), out.end());
  return Permutation(std::move(in), x.size());
}

inline void Push(MaximizeReport& r, const SubsetMask& x, double fx, const std::string& phase) {
  const std::size_t it = r.trajectory.empty() ? 0 : r.trajectory.back().iteration + 1;
  r.trajectory.push_back({it, x, fx, phase});
}

inline void Finish(const SetFunction& f, MaximizeReport& r, std::uint64_t calls_before, const ScheduleConfig& cfg,
                   const ConstraintFamily& c) {
  r.oracle_calls = f.eval_count() - calls_before;
  if (cfg.certify) {
    auto truth = brute_maximize(f, c);
    r.optimum_value = truth.optimum_value;
    r.factor_certificate = approximation_ratio(r.value, truth.optimum_value);
  }
}

// Greedy chain: repeatedly append the feasible element of largest gain
// (ties to the lowest id), then the remaining elements in id order.
// `ratio_costs` switches to gain-per-cost; `prefix` is placed first as given.
inline std::pair<Permutation, std::size_t> GreedyChain(const SetFunction& f, const ConstraintFamily& c,
                                                       const std::vector<std::size_t>& prefix = {},
                                                       const std::vector<double>* ratio_costs = nullptr) {
  const std::size_t n = f.size();
  SubsetMask s(n);
  std::vector<std::size_t> order;
  for (std::size_t j : prefix) {
    s.insert(j);
    order.push_back(j);
  }
  double fs = f(s);
  while (true) {
    std::optional<std::size_t> best;
    double best_score = -std::numeric_limits<double>::infinity();
    double best_value = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (s.contains(j)) continue;
      SubsetMask t = s.with(j);
      if (!is_feasible(t, c)) continue;
      const double ft = f(t);
      const double g = ft - fs;
      double score = g;
      if (ratio_costs) {
        const double cj = (*ratio_costs)[j];
        score = cj > 0.0 ? g / cj : (g > 0.0 ? std::numeric_limits<double>::infinity() : g);
      }
      if (!best || score > best_score) {
        best = j;
        best_score = score;
        best_value = ft;
      }
    }
    if (!best) break;
    s.insert(*best);
    order.push_back(*best);
    fs = best_value;
  }
  const std::size_t greedy_size = order.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!s.contains(j)) order.push_back(j);
  }
  return {Permutation(std::move(order), 0), greedy_size};
}

// Shared driver for RP / RA.
inline MaximizeReport RandomPermutationRun(const SetFunction& f, const ScheduleConfig& cfg, bool adaptive, Rng& rng) {
  const ConstraintFamily c = ConstraintFamily::Unconstrained(f.size());
  MaximizeReport r;
  SubsetMask x = f.empty_set();
  double fx = f(x);
  Push(r, x, fx, "start");
  while (true) {
    auto step = MaxStep(f, RandomAnchored(x, rng), x, c);
    const double fnext = f(step.next);
    if (!Improves(fnext, fx, cfg.eta)) break;
    x = std::move(step.next);
    fx = fnext;
    ++r.iterations;
    Push(r, x, fx, "step");
    if (!adaptive) break;
  }
  r.solution = x;
  r.value = fx;
  return r;
}

}  // namespace detail

// RP (adaptive = false): one subgradient step from the empty set with a
// uniformly random permutation. RA: keep drawing random permutations anchored
// at the current set while the step improves by a factor (1 + eta). Best of
// cfg.repetitions runs.
inline MaximizeReport mmax_rp_ra(const SetFunction& f, const ScheduleConfig& cfg, bool adaptive) {
  if (cfg.repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  const std::uint64_t before = f.eval_count();
  detail::Rng rng(cfg.seed);
  std::optional<MaximizeReport> best;
  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    auto run = detail::RandomPermutationRun(f, cfg, adaptive, rng);
    if (!best || run.value > best->value) best = std::move(run);
  }
  MaximizeReport r = std::move(*best);
  r.schedule = adaptive ? Schedule::kRA : Schedule::kRP;
  r.seed = cfg.seed;
  detail::CheckNonnegative(f, r);
  r.bound = 0.25;
  r.local_max = is_local_maximum(f, r.solution);
  detail::Finish(f, r, before, cfg, ConstraintFamily::Unconstrained(f.size()));
  return r;
}

// Randomized local search. The permutation anchored at X puts the element of
// smallest removal gain f(j | X\j) at the last anchor position and the element
// of largest insertion gain f(j | X) right after the anchor block; the other
// positions are shuffled. Starts at argmax_j f(j) and stops at an
// eta-approximate local maximum X, then returns the better of X and V \ X.
inline MaximizeReport mmax_rls(const SetFunction& f, const ScheduleConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("RLS requires eta > 0");
  if (cfg.repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  const std::uint64_t before = f.eval_count();
  const std::size_t n = f.size();
  const ConstraintFamily c = ConstraintFamily::Unconstrained(n);
  detail::Rng rng(cfg.seed);
  std::optional<MaximizeReport> best;
  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    MaximizeReport r;
    SubsetMask x = f.empty_set();
    double fx = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double fj = f(f.empty_set().with(j));
      if (j == 0 || fj > fx) {
        fx = fj;
        x = f.empty_set().with(j);
      }
    }
    detail::Push(r, x, fx, "start");
    while (true) {
      std::vector<std::size_t> in = x.elements();
      std::vector<std::size_t> out = x.complement().elements();
      std::shuffle(in.begin(), in.end(), rng);
      std::shuffle(out.begin(), out.end(), rng);
      if (!in.empty()) {
        auto worst = std::min_element(in.begin(), in.end(), [&](std::size_t a, std::size_t b) {
          return removal_gain(f, a, x) < removal_gain(f, b, x);
        });
        std::iter_swap(worst, in.end() - 1);
      }
      if (!out.empty()) {
        auto top = std::max_element(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
          return gain(f, a, x) < gain(f, b, x);
        });
        std::iter_swap(top, out.begin());
      }
      const std::size_t anchor = in.size();
      in.insert(in.end(), out.begin(), out.end());
      auto step = detail::MaxStep(f, Permutation(std::move(in), anchor), x, c);
      const double fnext = f(step.next);
      if (!detail::Improves(fnext, fx, cfg.eta)) break;
      x = std::move(step.next);
      fx = fnext;
      ++r.iterations;
      detail::Push(r, x, fx, "step");
    }
    r.local_optimum = x;
    r.local_max = is_local_maximum(f, x, cfg.eta * std::abs(fx) + kTolerance);
    const SubsetMask flipped = x.complement();
    const double f_flipped = f(flipped);
    if (f_flipped > fx) {
      r.solution = flipped;
      r.value = f_flipped;
    } else {
      r.solution = x;
      r.value = fx;
    }
    if (!best || r.value > best->value) best = std::move(r);
  }
  MaximizeReport r = std::move(*best);
  r.schedule = Schedule::kRLS;
  r.seed = cfg.seed;
  r.bound = 1.0 / 3.0 - cfg.eta;
  detail::CheckNonnegative(f, r);
  detail::Finish(f, r, before, cfg, c);
  return r;
}

// Deterministic local search. Iteration 0 uses the pure greedy chain from the
// empty set. Afterwards odd iterations keep the suffix order of the previous
// permutation and fill the anchor block from the top with the element of
// smallest removal gain; even iterations keep the anchor block order and fill
// the suffix greedily by largest gain. Stops when a removal pass and an
// insertion pass both fail to improve by (1 + eta).
inline MaximizeReport mmax_dls(const SetFunction& f, const ScheduleConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("DLS requires eta > 0");
  const std::uint64_t before = f.eval_count();
  const std::size_t n = f.size();
  const ConstraintFamily c = ConstraintFamily::Unconstrained(n);
  MaximizeReport r;
  r.schedule = Schedule::kDLS;
  SubsetMask x = f.empty_set();
  double fx = f(x);
  detail::Push(r, x, fx, "start");

  Permutation sigma = detail::GreedyChain(f, c).first;
  auto step = detail::MaxStep(f, sigma, x, c);
  if (const double f1 = f(step.next); detail::Improves(f1, fx, cfg.eta)) {
    x = std::move(step.next);
    fx = f1;
    ++r.iterations;
    detail::Push(r, x, fx, "greedy");
  }
  std::size_t failures = 0;
  const std::size_t cap = 10 * n * n + 100;
  for (std::size_t t = 1; failures < 2 && t < cap; ++t) {
    std::vector<std::size_t> order;
    order.reserve(n);
    const bool odd = t % 2 == 1;
    if (odd) {
      // Anchor block from the top by smallest removal gain.
      std::vector<std::size_t> block(x.size());
      SubsetMask s = x;
      for (std::size_t pos = x.size(); pos-- > 0;) {
        std::size_t pick = 0;
        double pick_gain = std::numeric_limits<double>::infinity();
        for (std::size_t k : s.elements()) {
          const double g = removal_gain(f, k, s);
          if (g < pick_gain) {
            pick_gain = g;
            pick = k;
          }
        }
        block[pos] = pick;
        s.erase(pick);
      }
      order = std::move(block);
      for (std::size_t k : sigma.order()) {
        if (!x.contains(k)) order.push_back(k);
      }
    } else {
      for (std::size_t k : sigma.order()) {
        if (x.contains(k)) order.push_back(k);
      }
      SubsetMask s = x;
      while (s.size() < n) {
        std::size_t pick = 0;
        double pick_value = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
          if (s.contains(k)) continue;
          const double v = f(s.with(k));
          if (v > pick_value) {
            pick_value = v;
            pick = k;
          }
        }
        s.insert(pick);
        order.push_back(pick);
      }
    }
    sigma = Permutation(std::move(order), x.size());
    auto st = detail::MaxStep(f, sigma, x, c);
    const double fnext = f(st.next);
    if (detail::Improves(fnext, fx, cfg.eta)) {
      x = std::move(st.next);
      fx = fnext;
      ++r.iterations;
      detail::Push(r, x, fx, odd ? "remove" : "insert");
      failures = 0;
    } else {
      ++failures;
    }
  }
  r.local_optimum = x;
  r.local_max = is_local_maximum(f, x, cfg.eta * std::abs(fx) + kTolerance);
  const SubsetMask flipped = x.complement();
  const double f_flipped = f(flipped);
  r.solution = f_flipped > fx ? flipped : x;
  r.value = std::max(f_flipped, fx);
  r.bound = 1.0 / 3.0 - cfg.eta;
  detail::CheckNonnegative(f, r);
  detail::Finish(f, r, before, cfg, c);
  return r;
}

namespace detail {

// Bi-directional greedy scan in order tau. `rng` selects the randomized
// acceptance rule. Returns the induced chain (accepted elements in scan order,
// then rejected ones) and the scan's own output set.
inline std::pair<Permutation, SubsetMask> BidirectionalChain(const SetFunction& f, const std::vector<std::size_t>& tau,
                                                             Rng* rng) {
  const std::size_t n = f.size();
  SubsetMask lower = f.empty_set();
  SubsetMask upper = f.ground_set();
  double f_lower = f(lower);
  double f_upper = f(upper);
  std::vector<std::size_t> accepted;
  std::vector<std::size_t> rejected;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i : tau) {
    const double f_lower_plus = f(lower.with(i));
    const double f_upper_minus = f(upper.without(i));
    const double a = f_lower_plus - f_lower;
    const double b = f_upper_minus - f_upper;
    bool accept;
    if (rng) {
      const double ap = std::max(a, 0.0);
      const double bp = std::max(b, 0.0);
      accept = ap + bp <= 0.0 ? true : coin(*rng) < ap / (ap + bp);
    } else {
      accept = a >= b;
    }
    if (accept) {
      lower.insert(i);
      f_lower = f_lower_plus;
      accepted.push_back(i);
    } else {
      upper.erase(i);
      f_upper = f_upper_minus;
      rejected.push_back(i);
    }
  }
  accepted.insert(accepted.end(), rejected.begin(), rejected.end());
  (void)n;
  return {Permutation(std::move(accepted), 0), lower};
}

inline MaximizeReport BidirectionalRun(const SetFunction& f, const std::vector<std::size_t>& tau, Rng* rng) {
  const ConstraintFamily c = ConstraintFamily::Unconstrained(f.size());
  MaximizeReport r;
  SubsetMask x = f.empty_set();
  const double f0 = f(x);
  Push(r, x, f0, "start");
  auto [sigma, scan] = BidirectionalChain(f, tau, rng);
  r.reference_value = f(scan);
  auto step = MaxStep(f, sigma, x, c);
  const double f1 = f(step.next);
  if (f1 > f0 + kTolerance) {
    ++r.iterations;
    Push(r, step.next, f1, "step");
    r.solution = std::move(step.next);
    r.value = f1;
  } else {
    r.solution = x;
    r.value = f0;
  }
  return r;
}

inline std::vector<std::size_t> IdentityOrder(std::size_t n) {
  std::vector<std::size_t> tau(n);
  for (std::size_t i = 0; i < n; ++i) tau[i] = i;
  return tau;
}

}  // namespace detail

// One MMax step with the chain induced by the deterministic bi-directional
// greedy scan in order `tau` (identity when empty).
inline MaximizeReport mmax_bg(const SetFunction& f, const ScheduleConfig& cfg, std::vector<std::size_t> tau = {}) {
  const std::uint64_t before = f.eval_count();
  if (tau.empty()) tau = detail::IdentityOrder(f.size());
  Permutation(tau, 0);  // validates tau
  MaximizeReport r = detail::BidirectionalRun(f, tau, nullptr);
  r.schedule = Schedule::kBG;
  r.bound = 1.0 / 3.0;
  r.local_max = is_local_maximum(f, r.solution);
  detail::CheckNonnegative(f, r);
  detail::Finish(f, r, before, cfg, ConstraintFamily::Unconstrained(f.size()));
  return r;
}

// Randomized bi-directional greedy: accept with probability a'/(a'+b') where
// a' = max(f(i|L), 0) and b' = max(-f(i|U\i), 0), accepting when both vanish.
inline MaximizeReport mmax_rg(const SetFunction& f, const ScheduleConfig& cfg) {
  if (cfg.repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  const std::uint64_t before = f.eval_count();
  detail::Rng rng(cfg.seed);
  const auto tau = detail::IdentityOrder(f.size());
  std::optional<MaximizeReport> best;
  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    auto run = detail::BidirectionalRun(f, tau, &rng);
    if (!best || run.value > best->value) best = std::move(run);
  }
  MaximizeReport r = std::move(*best);
  r.schedule = Schedule::kRG;
  r.seed = cfg.seed;
  r.bound = 0.5;
  r.local_max = is_local_maximum(f, r.solution);
  detail::CheckNonnegative(f, r);
  detail::Finish(f, r, before, cfg, ConstraintFamily::Unconstrained(f.size()));
  return r;
}

// Approximation factor of the greedy-permutation step for constraint `c` and
// curvature `kappa`, when one is known.
inline std::optional<double> greedy_bound(const ConstraintFamily& c, double kappa) {
  switch (c.kind()) {
    case ConstraintKind::kCardinalityUpper:
      return cardinality_greedy_bound(kappa);
    case ConstraintKind::kMatroid:
    case ConstraintKind::kMatroidIntersection:
      return matroid_greedy_bound(*c.matroid_count(), kappa);
    default:
      if (auto kk = c.maximal_set_cardinalities(); kk && c.is_down_monotone()) {
        return down_monotone_greedy_bound(kk->first, kk->second, kappa);
      }
      return std::nullopt;
  }
}

// One MMax step with the greedy permutation over a down-monotone family.
inline MaximizeReport mmax_greedy_constrained(const SetFunction& f, const ConstraintFamily& c,
                                              const ScheduleConfig& cfg) {
  if (c.size() != f.size()) throw std::invalid_argument("ground set mismatch");
  if (!c.is_down_monotone()) throw std::invalid_argument("greedy maximization needs a down-monotone family");
  const std::uint64_t before = f.eval_count();
  detail::CheckMonotone(f);
  MaximizeReport r;
  r.schedule = Schedule::kGreedy;
  SubsetMask x = f.empty_set();
  detail::Push(r, x, f(x), "start");
  auto [sigma, greedy_size] = detail::GreedyChain(f, c);
  const SubsetMask greedy_set = sigma.prefix(greedy_size);
  r.reference_value = f(greedy_set);
  auto step = detail::MaxStep(f, sigma, x, c);
  r.solution = step.next;
  r.value = f(step.next);
  // An inexact modular step (matroid intersections) can miss the chain
  // prefix, which is itself feasible.
  if (r.value < *r.reference_value) {
    r.warnings.push_back("inexact modular step; kept the greedy set");
    r.solution = greedy_set;
    r.value = *r.reference_value;
  }
  ++r.iterations;
  detail::Push(r, r.solution, r.value, "step");
  try {
    const double kappa = curvature(f);
    r.curvature = kappa;
    r.bound = greedy_bound(c, kappa);
  } catch (const std::domain_error& e) {
    r.warnings.push_back(std::string("bound omitted: ") + e.what());
  }
  detail::Finish(f, r, before, cfg, c);
  return r;
}

// Budget-constrained greedy by gain-to-cost ratio. Returns the better of the
// best feasible singleton and the MMax step with the ratio-greedy chain. With
// `enumerate_triples`, additionally restarts from every feasible prefix of up
// to three elements and keeps the best.
inline MaximizeReport mmax_knapsack(const SetFunction& f, const std::vector<double>& costs, double budget,
                                    const ScheduleConfig& cfg, bool enumerate_triples = false) {
  const std::size_t n = f.size();
  if (costs.size() != n) throw std::invalid_argument("one cost per element required");
  const ConstraintFamily c = ConstraintFamily::Knapsack(costs, budget);
  const std::uint64_t before = f.eval_count();
  detail::CheckMonotone(f);
  MaximizeReport r;
  r.schedule = Schedule::kKnapsackGreedy;
  SubsetMask empty = f.empty_set();
  detail::Push(r, empty, f(empty), "start");
  r.solution = empty;
  r.value = r.trajectory.front().value;

  auto consider = [&](const SubsetMask& x, double fx, const std::string& phase) {
    if (fx > r.value + kTolerance) {
      r.solution = x;
      r.value = fx;
      ++r.iterations;
      detail::Push(r, x, fx, phase);
    }
  };

  bool any_single = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (costs[j] <= budget + kTolerance) {
      any_single = true;
      consider(empty.with(j), f(empty.with(j)), "singleton");
    }
  }
  if (!any_single) {
    r.warnings.push_back("no feasible singleton");
    detail::Finish(f, r, before, cfg, c);
    return r;
  }

  auto run_prefix = [&](const std::vector<std::size_t>& prefix, const std::string& phase) {
    auto [sigma, greedy_size] = detail::GreedyChain(f, c, prefix, &costs);
    auto step = detail::MaxStep(f, sigma, empty, c);
    const SubsetMask greedy_set = sigma.prefix(greedy_size);
    const double f_greedy = f(greedy_set);
    consider(step.next, f(step.next), phase);
    // The budget solver may be approximate; the chain prefix is feasible.
    consider(greedy_set, f_greedy, phase);
    return f_greedy;
  };
  r.reference_value = run_prefix({}, "step");
  r.bound = kKnapsackBound;

  if (enumerate_triples) {
    auto try_prefix = [&](const std::vector<std::size_t>& prefix) {
      if (is_feasible(SubsetMask::FromElements(n, prefix), c)) run_prefix(prefix, "prefix");
    };
    for (std::size_t i = 0; i < n; ++i) {
      try_prefix({i});
      for (std::size_t j = i + 1; j < n; ++j) {
        try_prefix({i, j});
        for (std::size_t k = j + 1; k < n; ++k) try_prefix({i, j, k});
      }
    }
    r.bound = kKnapsackEnumerationBound;
  }
  try {
    r.curvature = curvature(f);
  } catch (const std::domain_error&) {
  }
  detail::Finish(f, r, before, cfg, c);
  return r;
}

// Wraps the output Y of any external algorithm: the permutation placing Y
// first yields a subgradient tight at both the empty set and Y, so one MMax
// step from the empty set returns a set at least as good as Y.
inline MaximizeReport mmax_from_solution(const SetFunction& f, const SubsetMask& y, const ConstraintFamily& c,
                                         const ScheduleConfig& cfg = {}) {
  if (!is_feasible(y, c)) throw InfeasibleError("external solution is not feasible");
  const std::uint64_t before = f.eval_count();
  MaximizeReport r;
  r.schedule = Schedule::kExternal;
  SubsetMask x = f.empty_set();
  detail::Push(r, x, f(x), "start");
  std::vector<std::size_t> order = y.elements();
  for (std::size_t j : y.complement().elements()) order.push_back(j);
  auto step = detail::MaxStep(f, Permutation(std::move(order), 0), x, c);
  r.reference_value = f(y);
  r.solution = step.next;
  r.value = f(step.next);
  ++r.iterations;
  detail::Push(r, r.solution, r.value, "step");
  detail::Finish(f, r, before, cfg, c);
  return r;
}

}  // namespace submm

#endif  // SUBMM_MMAX_HPP_
