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

#ifndef SUBMM_MMIN_HPP_
#define SUBMM_MMIN_HPP_

// Majorize-minimize for submodular minimization.
//
// Each step minimizes the modular upper bound m(X) = f(Y) + g(X) - g(Y) built
// from a supergradient g at the current set Y. In the unconstrained case the
// bound is minimized elementwise and ties are broken toward Y: an outside
// element enters only when g(j) < -tol and an inside element leaves only when
// g(j) > tol. With grow this gives X + {j : f(j | X) < 0} (MMin-I), with shrink
// X - {j : f(j | X\j) > 0} (MMin-II), and with bar the contraction
// (X cap B) + A (MMin-III).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "submm/brute_force.hpp"
#include "submm/core.hpp"
#include "submm/linopt.hpp"
#include "submm/semigradient.hpp"

namespace submm {

struct LatticeInterval {
  SubsetMask lower;
  SubsetMask upper;

  bool contains(const SubsetMask& x) const { return lower.is_subset_of(x) && x.is_subset_of(upper); }
  std::size_t width() const { return (upper - lower).size(); }
  // 1 - |upper \ lower| / n: the fraction of the ground set fixed by the
  // interval.
  double reduction() const {
    return 1.0 - static_cast<double>(width()) / static_cast<double>(lower.universe());
  }
};

struct TrajectoryPoint {
  std::size_t iteration = 0;
  SubsetMask set;
  double value = 0.0;
  std::string phase;
};

enum class MMinVariant { kI, kII, kIII, kAlternating, kConstrained };

inline std::string to_string(MMinVariant v) {
  switch (v) {
    case MMinVariant::kI: return "MMin-I";
    case MMinVariant::kII: return "MMin-II";
    case MMinVariant::kIII: return "MMin-III";
    case MMinVariant::kAlternating: return "alternating";
    case MMinVariant::kConstrained: return "constrained";
  }
  return "?";
}

struct MinimizeReport {
  SubsetMask solution;
  double value = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  std::optional<LatticeInterval> lattice;
  std::optional<double> curvature;
  // n / (1 + (n-1)(1 - kappa)): the a-priori factor.
  std::optional<double> curvature_bound;
  // |X*| / (1 + (|X*|-1)(1 - kappa)) with X* from brute force.
  std::optional<double> sharp_bound;
  // f(solution) / f(X*) from brute force.
  std::optional<double> factor;
  std::optional<double> optimum_value;
  // Value after the first iteration (the MU solution) in constrained mode.
  std::optional<double> first_iteration_value;
  std::uint64_t oracle_calls = 0;
  // Outer iterations that produced a new set.
  std::size_t iterations = 0;
  MMinVariant variant = MMinVariant::kI;
  std::vector<std::string> warnings;
};

inline constexpr double kDefaultConstrainedEta = 1e-6;

// p(x) = x / (1 + (x-1)(1-kappa)); the curvature factor for a set size x.
inline double curvature_factor(double size, double kappa) {
  if (size <= 0.0) return 1.0;
  return size / (1.0 + (size - 1.0) * (1.0 - kappa));
}

namespace detail {

inline MMinVariant VariantOf(SupergradientKind kind) {
  switch (kind) {
    case SupergradientKind::kGrow: return MMinVariant::kI;
    case SupergradientKind::kShrink: return MMinVariant::kII;
    case SupergradientKind::kBar: return MMinVariant::kIII;
  }
  return MMinVariant::kI;
}

// One unconstrained step from x: minimize the upper bound, ties toward x.
inline SubsetMask UnconstrainedStep(LazySupergradient& g, const SubsetMask& x) {
  g.set_anchor(x);
  SubsetMask next = x;
  for (std::size_t j = 0; j < x.universe(); ++j) {
    const double gj = g[j];
    if (x.contains(j)) {
      if (gj > kTolerance) next.erase(j);
    } else if (gj < -kTolerance) {
      next.insert(j);
    }
  }
  return next;
}

// Unconstrained descent until a fixpoint (eta = 0) or until the relative
// progress falls below eta. Appends to `trajectory`.
inline SubsetMask DescendUnconstrained(const SetFunction& f, SubsetMask x, SupergradientKind kind, double eta,
                                       std::vector<TrajectoryPoint>& trajectory, std::size_t& iterations,
                                       std::vector<std::string>& warnings) {
  LazySupergradient g(f, kind);
  double fx = f(x);
  if (trajectory.empty()) trajectory.push_back({0, x, fx, "start"});
  // Set-monotone variants stop within n steps; the slack covers arbitrary
  // starts where a step both adds and drops elements.
  const std::size_t cap = 4 * f.size() + 4;
  for (std::size_t step = 0; step < cap; ++step) {
    SubsetMask next = UnconstrainedStep(g, x);
    if (next == x) return x;
    const double fnext = f(next);
    ++iterations;
    trajectory.push_back({trajectory.back().iteration + 1, next, fnext, to_string(kind)});
    const double progress = fx - fnext;
    x = std::move(next);
    if (eta > 0.0 && progress < eta * std::abs(fx)) return x;
    fx = fnext;
  }
  warnings.push_back("iteration cap reached before a fixpoint");
  return x;
}

inline void FillReport(const SetFunction& f, MinimizeReport& r, std::uint64_t calls_before) {
  r.solution = r.trajectory.back().set;
  r.value = r.trajectory.back().value;
  r.oracle_calls = f.eval_count() - calls_before;
}

// Constrained MMin-I. From an infeasible anchor (the empty set) the first
// step is always taken; every other step is accepted only when
// f(next) <= (1 - eta) f(x) with a strict decrease. Appends to r.trajectory.
inline void DescendConstrained(const SetFunction& f, const ConstraintFamily& c, const SubsetMask& anchor,
                               bool anchor_feasible, double eta, MinimizeReport& r) {
  LazySupergradient g(f, SupergradientKind::kGrow);
  SubsetMask x = anchor;
  double fx = 0.0;
  if (anchor_feasible) {
    fx = f(x);
    r.trajectory.push_back({0, x, fx, "start"});
  } else {
    g.set_anchor(anchor);
    x = minimize_modular(g.materialize().g, c).set;
    fx = f(x);
    r.trajectory.push_back({1, x, fx, "grow"});
    r.first_iteration_value = fx;
    ++r.iterations;
  }
  const std::size_t cap = 10 * f.size() + 100;
  for (std::size_t step = 0; step < cap; ++step) {
    g.set_anchor(x);
    SubsetMask next = minimize_modular(g.materialize().g, c).set;
    if (next == x) return;
    const double fnext = f(next);
    if (!(fnext <= (1.0 - eta) * fx) || !(fnext < fx - kTolerance)) return;
    x = std::move(next);
    fx = fnext;
    ++r.iterations;
    r.trajectory.push_back({r.trajectory.back().iteration + 1, x, fx, "grow"});
  }
  r.warnings.push_back("iteration cap reached");
}

}  // namespace detail

// Majorize-minimize descent with a fixed supergradient kind.
// Unconstrained families use the tie-toward-current rule above; any other
// family requires kind = grow and solves each step with minimize_modular.
inline MinimizeReport mmin_iterate(const SetFunction& f, const SubsetMask& x0, SupergradientKind kind,
                                   const ConstraintFamily& c, double eta = 0.0) {
  if (eta < 0.0) throw std::invalid_argument("eta must be nonnegative");
  if (x0.universe() != f.size() || c.size() != f.size()) {
    throw std::invalid_argument("ground set mismatch");
  }
  const std::uint64_t calls_before = f.eval_count();
  MinimizeReport r;
  r.variant = detail::VariantOf(kind);
  if (c.kind() == ConstraintKind::kUnconstrained) {
    detail::DescendUnconstrained(f, x0, kind, eta, r.trajectory, r.iterations, r.warnings);
  } else {
    if (kind != SupergradientKind::kGrow) {
      throw UnsupportedError("constrained MMin supports only the grow supergradient");
    }
    if (!is_feasible(x0, c)) throw InfeasibleError("starting set is not feasible");
    r.variant = MMinVariant::kConstrained;
    detail::DescendConstrained(f, c, x0, true, eta, r);
  }
  detail::FillReport(f, r, calls_before);
  return r;
}

inline MinimizeReport mmin_iterate(const SetFunction& f, const SubsetMask& x0, SupergradientKind kind,
                                   double eta = 0.0) {
  return mmin_iterate(f, x0, kind, ConstraintFamily::Unconstrained(f.size()), eta);
}

// Everything the pruning step learns: the classic interval [A, B] from
// MMin-III and the tightened [A+, B+] from MMin-I / MMin-II.
struct PruneReport {
  LatticeInterval classic;
  LatticeInterval tightened;
  std::uint64_t oracle_calls = 0;
  std::size_t iterations_grow = 0;
  std::size_t iterations_shrink = 0;
};

inline PruneReport prune(const SetFunction& f) {
  const std::uint64_t before = f.eval_count();
  PruneReport p;
  auto a = mmin_iterate(f, f.empty_set(), SupergradientKind::kBar);
  auto b = mmin_iterate(f, f.ground_set(), SupergradientKind::kBar);
  auto ap = mmin_iterate(f, f.empty_set(), SupergradientKind::kGrow);
  auto bp = mmin_iterate(f, f.ground_set(), SupergradientKind::kShrink);
  p.classic = {a.solution, b.solution};
  p.tightened = {ap.solution, bp.solution};
  p.iterations_grow = ap.iterations;
  p.iterations_shrink = bp.iterations;
  p.oracle_calls = f.eval_count() - before;
  return p;
}

// [A+, B+]: MMin-I from the empty set and MMin-II from V.
inline LatticeInterval prune_lattice(const SetFunction& f) {
  auto ap = mmin_iterate(f, f.empty_set(), SupergradientKind::kGrow);
  auto bp = mmin_iterate(f, f.ground_set(), SupergradientKind::kShrink);
  return {ap.solution, bp.solution};
}

// MMin-III from x0; converges to (x0 cap B) + A.
inline SubsetMask mmin3_contract(const SetFunction& f, const SubsetMask& x0) {
  return mmin_iterate(f, x0, SupergradientKind::kBar).solution;
}

// Alternates grow-descent and shrink-descent until neither moves. The
// trajectory tags each point with the phase that produced it.
inline MinimizeReport mmin_alternate(const SetFunction& f, const SubsetMask& x0, double eta = 0.0) {
  if (x0.universe() != f.size()) throw std::invalid_argument("ground set mismatch");
  const std::uint64_t calls_before = f.eval_count();
  MinimizeReport r;
  r.variant = MMinVariant::kAlternating;
  SubsetMask x = x0;
  const std::size_t cap = 4 * f.size() + 4;
  bool settled = false;
  for (std::size_t round = 0; round < cap && !settled; ++round) {
    SubsetMask grown = detail::DescendUnconstrained(f, x, SupergradientKind::kGrow, eta, r.trajectory,
                                                    r.iterations, r.warnings);
    SubsetMask shrunk = detail::DescendUnconstrained(f, grown, SupergradientKind::kShrink, eta, r.trajectory,
                                                     r.iterations, r.warnings);
    settled = grown == x && shrunk == grown;
    x = std::move(shrunk);
  }
  if (!settled) r.warnings.push_back("alternation cap reached");
  detail::FillReport(f, r, calls_before);
  return r;
}

// Constrained MMin-I for monotone nonnegative f. The first iteration
// minimizes sum_{j in X} f(j) over C (the MU solution); later iterations
// continue while f(X^{t+1}) <= (1 - eta) f(X^t). When `certify` is set and
// the family is small enough, brute force fills the sharp bound and the
// a-posteriori factor.
inline MinimizeReport constrained_mmin(const SetFunction& f, const ConstraintFamily& c,
                                       double eta = kDefaultConstrainedEta, bool certify = false) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (c.size() != f.size()) throw std::invalid_argument("ground set mismatch");
  MinimizeReport r;
  r.variant = MMinVariant::kConstrained;
  std::optional<double> kappa;
  try {
    kappa = curvature(f);
  } catch (const std::domain_error& e) {
    r.warnings.push_back(std::string("curvature bound omitted: ") + e.what());
  }
  const std::uint64_t solve_start = f.eval_count();
  detail::DescendConstrained(f, c, f.empty_set(), false, eta, r);
  detail::FillReport(f, r, solve_start);
  if (kappa) {
    r.curvature = kappa;
    r.curvature_bound = curvature_factor(static_cast<double>(f.size()), *kappa);
  }
  if (certify && f.size() <= kMaxExhaustiveN) {
    auto truth = brute_minimize(f, c);
    r.optimum_value = truth.optimum_value;
    r.factor = approximation_ratio(r.value, truth.optimum_value);
    if (kappa) {
      r.sharp_bound = curvature_factor(static_cast<double>(truth.smallest_optimizer().size()), *kappa);
    }
  }
  return r;
}

}  // namespace submm

#endif  // SUBMM_MMIN_HPP_
