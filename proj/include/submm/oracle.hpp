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

#ifndef SUBMM_ORACLE_HPP_
#define SUBMM_ORACLE_HPP_

// Exhaustive certificate checks for semigradients and the minimizer lattice.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submm/brute_force.hpp"
#include "submm/core.hpp"
#include "submm/mmin.hpp"
#include "submm/semigradient.hpp"

namespace submm {

inline constexpr std::size_t kMaxCertificateN = 16;

namespace detail {

inline void CheckCertificateBudget(std::size_t n) {
  if (n > kMaxCertificateN) {
    throw BudgetError("certificate refused: n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(kMaxCertificateN));
  }
}

// First X (in bit order) violating f(X) - y(X) >= f(Y) - y(Y), or the reverse
// inequality when `upper` is set.
inline std::optional<SubsetMask> FindViolation(const SetFunction& f, const ModularVector& y, const SubsetMask& anchor,
                                               bool upper, double tol) {
  const std::size_t n = f.size();
  CheckCertificateBudget(n);
  if (y.size() != n || anchor.universe() != n) throw std::invalid_argument("vector size does not match oracle");
  const double ref = f(anchor) - y(anchor);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < total; ++b) {
    SubsetMask x = SubsetMask::FromBits(n, b);
    const double d = f(x) - y(x);
    if (upper ? d > ref + tol : d < ref - tol) return x;
  }
  return std::nullopt;
}

}  // namespace detail

// A set X on which the subgradient inequality fails, if any.
inline std::optional<SubsetMask> find_semigradient_violation(const SetFunction& f, const SubgradientVector& h,
                                                             double tol = kTolerance) {
  return detail::FindViolation(f, h.h, h.anchor, false, tol);
}

inline std::optional<SubsetMask> find_semigradient_violation(const SetFunction& f, const SupergradientVector& g,
                                                             double tol = kTolerance) {
  return detail::FindViolation(f, g.g, g.anchor, true, tol);
}

inline bool check_semigradient_membership(const SetFunction& f, const SubgradientVector& h,
                                          double tol = kTolerance) {
  return !find_semigradient_violation(f, h, tol).has_value();
}

inline bool check_semigradient_membership(const SetFunction& f, const SupergradientVector& g,
                                          double tol = kTolerance) {
  return !find_semigradient_violation(f, g, tol).has_value();
}

// |m(Y) - f(Y)| at the anchor.
inline double anchor_gap(const SetFunction& f, const ModularBound& m) { return std::abs(m(m.anchor) - f(m.anchor)); }

struct ClaimResult {
  explicit ClaimResult(std::string name) : claim(std::move(name)) {}

  std::string claim;
  bool passed = true;
  // Offending set and a short reason when the claim fails.
  std::optional<SubsetMask> witness;
  std::string detail;
};

struct LatticeCertificate {
  LatticeInterval classic;
  LatticeInterval tightened;
  std::vector<SubsetMask> minimizers;
  double optimum_value = 0.0;
  std::size_t local_minima = 0;
  std::vector<ClaimResult> claims;

  bool passed() const {
    for (const auto& c : claims) {
      if (!c.passed) return false;
    }
    return true;
  }
};

// Checks, against exhaustive enumeration:
//   A <= A+ <= every minimizer <= B+ <= B,
//   A+ and B+ are local minima,
//   every local minimum Z satisfies A+ <= Z <= B+
// (so A+ and B+ are the smallest and largest local minima).
inline LatticeCertificate verify_lattice_claims(const SetFunction& f) {
  detail::CheckCertificateBudget(f.size());
  LatticeCertificate cert;
  const PruneReport p = prune(f);
  cert.classic = p.classic;
  cert.tightened = p.tightened;
  const BruteForceResult truth = brute_minimize(f);
  cert.minimizers = truth.optimizers;
  cert.optimum_value = truth.optimum_value;
  cert.local_minima = truth.local_optima.size();

  const SubsetMask& a = p.classic.lower;
  const SubsetMask& b = p.classic.upper;
  const SubsetMask& ap = p.tightened.lower;
  const SubsetMask& bp = p.tightened.upper;

  auto subset_claim = [&](std::string name, const SubsetMask& lo, const SubsetMask& hi) {
    ClaimResult c{std::move(name)};
    if (!lo.is_subset_of(hi)) {
      c.passed = false;
      c.witness = lo - hi;
      c.detail = lo.to_string() + " not within " + hi.to_string();
    }
    cert.claims.push_back(std::move(c));
  };
  subset_claim("A subset of A+", a, ap);
  subset_claim("B+ subset of B", bp, b);

  ClaimResult inside{"minimizers within [A+, B+]"};
  for (const auto& x : truth.optimizers) {
    if (!ap.is_subset_of(x) || !x.is_subset_of(bp)) {
      inside.passed = false;
      inside.witness = x;
      inside.detail = "minimizer " + x.to_string() + " outside " + ap.to_string() + ".." + bp.to_string();
      break;
    }
  }
  cert.claims.push_back(std::move(inside));

  for (auto [name, s] : {std::pair<const char*, const SubsetMask*>{"A+ is a local minimum", &ap},
                         std::pair<const char*, const SubsetMask*>{"B+ is a local minimum", &bp}}) {
    ClaimResult c{name};
    if (!is_local_minimum(f, *s)) {
      c.passed = false;
      c.witness = *s;
      c.detail = s->to_string() + " improves by one flip";
    }
    cert.claims.push_back(std::move(c));
  }

  ClaimResult locals{"local minima within [A+, B+]"};
  for (const auto& z : truth.local_optima) {
    if (!ap.is_subset_of(z) || !z.is_subset_of(bp)) {
      locals.passed = false;
      locals.witness = z;
      locals.detail = "local minimum " + z.to_string() + " outside " + ap.to_string() + ".." + bp.to_string();
      break;
    }
  }
  cert.claims.push_back(std::move(locals));
  return cert;
}

}  // namespace submm

#endif  // SUBMM_ORACLE_HPP_
