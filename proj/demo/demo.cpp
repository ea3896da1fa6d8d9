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

// Prunes a small concave-over-modular instance, then maximizes a
// diversity-relevance objective with two schedules.

#include <cstdio>

#include "submm/submm.hpp"

int main() {
  using namespace submm;

  ConcaveOverModularFn f(ModularVector({3, 9, 17, 14, 14, 10, 16, 4, 13, 2}),
                         ModularVector({-9, 4, 6, -1, 10, -4, -6, -1, 2, -8}), ConcaveKind::kSqrt,
                         ModularMode::kPlain, 1.0);
  const PruneReport p = prune(f);
  std::printf("A  = %s  B  = %s\n", p.classic.lower.to_string().c_str(), p.classic.upper.to_string().c_str());
  std::printf("A+ = %s  B+ = %s\n", p.tightened.lower.to_string().c_str(), p.tightened.upper.to_string().c_str());
  std::printf("f(A+) = %.6f after %llu oracle calls\n", f(p.tightened.lower),
              static_cast<unsigned long long>(p.oracle_calls));

  auto g = random_instance("diversity", 12, 7, {{"lambda", 0.8}});
  ScheduleConfig cfg;
  cfg.certify = true;
  for (const char* name : {"dls", "bg"}) {
    const MaximizeReport r = run_schedule(*g, name, cfg);
    std::printf("%-3s X = %s  f = %.4f  f/OPT = %.4f\n", name, r.solution.to_string().c_str(), r.value,
                r.factor_certificate.value_or(0.0));
  }
  return 0;
}
