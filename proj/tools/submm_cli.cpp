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

// submm command line: minimize, maximize, prune, verify, bench.
//
// Exit status: 0 when every asserted invariant holds, 1 when one fails,
// 2 on bad input.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "submm/submm.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOptions {
  std::string spec;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
};

void AddCommon(CLI::App* app, CommonOptions& o) {
  app->add_option("--spec", o.spec, "Problem or experiment spec (JSON file)")->required()->check(CLI::ExistingFile);
  app->add_option("--out", o.out, "Output path (file, or directory for bench); stdout when omitted");
  app->add_option("--seed", o.seed, "RNG seed");
  app->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

// Inline JSON when the argument starts with '{', otherwise a file path.
json JsonArgument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return json::parse(arg);
  return ReadJsonFile(arg);
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void WriteJson(const std::string& path, const json& j) { WriteText(path, j.dump(2) + "\n"); }

submm::ProblemSpec LoadProblem(const CommonOptions& o, const std::string& constraint_arg, bool seed_overrides) {
  json j = ReadJsonFile(o.spec);
  if (!constraint_arg.empty()) j["constraint"] = JsonArgument(constraint_arg);
  submm::ProblemSpec p = submm::problem_from_json(j);
  if (seed_overrides && o.seed) p.seed = *o.seed;
  return p;
}

// ---------------------------------------------------------------------------

struct MinimizeOptions {
  std::string variant = "grow";
  std::string start;
  double eta = -1.0;
  std::string constraint;
  bool certify = false;
};

int RunMinimize(const CommonOptions& o, const MinimizeOptions& m) {
  using namespace submm;
  const ProblemSpec p = LoadProblem(o, m.constraint, true);
  auto f = p.build();
  const ConstraintFamily c = p.build_constraint();
  const bool constrained = c.kind() != ConstraintKind::kUnconstrained;
  std::vector<std::string> failures;
  MinimizeReport r;
  if (constrained || m.variant == "constrained") {
    const double eta = m.eta < 0.0 ? kDefaultConstrainedEta : m.eta;
    r = constrained_mmin(*f, c, eta, m.certify);
    if (r.sharp_bound && r.optimum_value && r.value > *r.sharp_bound * *r.optimum_value + 1e-6) {
      failures.push_back("curvature bound violated");
    }
    if (r.first_iteration_value && r.value > *r.first_iteration_value + kTolerance) {
      failures.push_back("final value exceeds the first iteration");
    }
    if (!is_feasible(r.solution, c)) failures.push_back("infeasible output");
  } else {
    const double eta = m.eta < 0.0 ? 0.0 : m.eta;
    SubsetMask x0 = f->empty_set();
    const bool from_full = m.start == "full" || (m.start.empty() && m.variant == "shrink");
    if (from_full) x0 = f->ground_set();
    if (m.variant == "alternate") {
      r = mmin_alternate(*f, x0, eta);
      if (!is_local_minimum(*f, r.solution)) failures.push_back("alternation did not reach a local minimum");
    } else {
      SupergradientKind kind;
      if (m.variant == "grow") {
        kind = SupergradientKind::kGrow;
      } else if (m.variant == "shrink") {
        kind = SupergradientKind::kShrink;
      } else if (m.variant == "bar") {
        kind = SupergradientKind::kBar;
      } else {
        throw std::invalid_argument("unknown variant: " + m.variant);
      }
      r = mmin_iterate(*f, x0, kind, eta);
      if (r.iterations > f->size()) failures.push_back("more than n outer iterations");
    }
    if (m.certify) {
      auto truth = brute_minimize(*f);
      r.optimum_value = truth.optimum_value;
      r.factor = approximation_ratio(r.value, truth.optimum_value);
    }
  }
  if (auto d = check_descent(r.trajectory); !d.empty()) failures.push_back(d);
  json j{{"problem", problem_to_json(p)}, {"report", report_to_json(r)}, {"failures", failures},
         {"passed", failures.empty()}};
  WriteJson(o.out, j);
  return failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct MaximizeOptions {
  std::string schedule = "dls";
  std::size_t reps = 1;
  double eta = 0.01;
  std::string constraint;
  bool certify = false;
  bool enumerate_triples = false;
};

int RunMaximize(const CommonOptions& o, const MaximizeOptions& m) {
  using namespace submm;
  const ProblemSpec p = LoadProblem(o, m.constraint, false);
  auto f = p.build();
  const ConstraintFamily c = p.build_constraint();
  if (m.certify && f->size() > kMaxExhaustiveN) {
    throw BudgetError("--brute-force-certify needs n <= " + std::to_string(kMaxExhaustiveN));
  }
  ScheduleConfig cfg;
  cfg.eta = m.eta;
  cfg.seed = o.seed.value_or(0);
  cfg.repetitions = m.reps;
  cfg.certify = m.certify;
  MaximizeReport r;
  const Schedule s = schedule_from_string(m.schedule);
  const bool unconstrained_schedule = s != Schedule::kGreedy && s != Schedule::kKnapsackGreedy;
  if (unconstrained_schedule && c.kind() != ConstraintKind::kUnconstrained) {
    throw std::invalid_argument("schedule " + m.schedule + " is unconstrained; use greedy or knapsack");
  }
  switch (s) {
    case Schedule::kRP: r = mmax_rp_ra(*f, cfg, false); break;
    case Schedule::kRA: r = mmax_rp_ra(*f, cfg, true); break;
    case Schedule::kRLS: r = mmax_rls(*f, cfg); break;
    case Schedule::kDLS: r = mmax_dls(*f, cfg); break;
    case Schedule::kBG: r = mmax_bg(*f, cfg); break;
    case Schedule::kRG: r = mmax_rg(*f, cfg); break;
    case Schedule::kGreedy: r = mmax_greedy_constrained(*f, c, cfg); break;
    case Schedule::kKnapsackGreedy:
      if (c.kind() != ConstraintKind::kKnapsack) throw std::invalid_argument("knapsack schedule needs a knapsack constraint");
      r = mmax_knapsack(*f, c.costs(), c.budget(), cfg, m.enumerate_triples);
      break;
    case Schedule::kExternal: throw std::invalid_argument("external schedule is library-only");
  }
  std::vector<std::string> failures;
  if (auto d = check_ascent(r.trajectory); !d.empty()) failures.push_back(d);
  if (s == Schedule::kRA || s == Schedule::kRLS || s == Schedule::kDLS) {
    if (auto d = check_max_iterations(r, f->size(), cfg.eta); !d.empty()) failures.push_back(d);
  }
  if ((s == Schedule::kRLS || s == Schedule::kDLS) && !r.local_max) failures.push_back("local maximum check failed");
  if (s == Schedule::kBG && r.reference_value && r.value < *r.reference_value - kTolerance) {
    failures.push_back("below the direct bi-directional greedy set");
  }
  const bool per_instance = s == Schedule::kRLS || s == Schedule::kDLS || s == Schedule::kBG ||
                            s == Schedule::kGreedy || s == Schedule::kKnapsackGreedy;
  if (per_instance && r.factor_certificate && r.bound && *r.factor_certificate < *r.bound - kTolerance) {
    failures.push_back("approximation factor below its guarantee");
  }
  if (!is_feasible(r.solution, c)) failures.push_back("infeasible output");
  json j{{"problem", problem_to_json(p)}, {"report", report_to_json(r)}, {"failures", failures},
         {"passed", failures.empty()}};
  WriteJson(o.out, j);
  return failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int RunPrune(const CommonOptions& o) {
  using namespace submm;
  const ProblemSpec p = LoadProblem(o, "", true);
  auto f = p.build();
  const PruneReport r = prune(*f);
  const bool nested = r.classic.lower.is_subset_of(r.tightened.lower) &&
                      r.tightened.lower.is_subset_of(r.tightened.upper) &&
                      r.tightened.upper.is_subset_of(r.classic.upper);
  WriteJson(o.out, report_to_json(r));
  return nested ? 0 : 1;
}

// ---------------------------------------------------------------------------

int RunVerify(const CommonOptions& o, std::size_t samples) {
  using namespace submm;
  const ProblemSpec p = LoadProblem(o, "", true);
  auto f = p.build();
  const std::size_t n = f->size();
  json out;
  out["problem"] = problem_to_json(p);
  bool ok = true;
  if (p.constraint) throw std::invalid_argument("verify checks unconstrained claims only");

  const LatticeCertificate cert = verify_lattice_claims(*f);
  out["lattice"] = report_to_json(cert);
  ok = ok && cert.passed();

  std::mt19937_64 rng(o.seed.value_or(p.seed));
  std::bernoulli_distribution coin(0.5);
  json semis = json::array();
  for (std::size_t k = 0; k < samples; ++k) {
    SubsetMask y(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng)) y.insert(j);
    }
    std::vector<std::size_t> in = y.elements(), rest = y.complement().elements();
    std::shuffle(in.begin(), in.end(), rng);
    std::shuffle(rest.begin(), rest.end(), rng);
    in.insert(in.end(), rest.begin(), rest.end());
    const auto h = subgradient_from_permutation(*f, Permutation(in, y.size()));
    auto record = [&](const std::string& what, const std::optional<SubsetMask>& bad, double gap) {
      ClaimResult c(what + " at " + y.to_string());
      if (bad) {
        c.passed = false;
        c.witness = bad;
        c.detail = "defining inequality fails";
      } else if (gap > kTolerance) {
        c.passed = false;
        c.detail = "bound not tight at the anchor";
      }
      ok = ok && c.passed;
      semis.push_back(claim_to_json(c));
    };
    record("subgradient", find_semigradient_violation(*f, h), anchor_gap(*f, lower_bound(*f, h)));
    for (auto kind : {SupergradientKind::kGrow, SupergradientKind::kShrink, SupergradientKind::kBar}) {
      const auto g = supergradient(*f, y, kind);
      record(to_string(kind) + " supergradient", find_semigradient_violation(*f, g), anchor_gap(*f, upper_bound(*f, g)));
    }
  }
  out["semigradients"] = semis;
  out["passed"] = ok;
  WriteJson(o.out, out);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

int RunBench(const CommonOptions& o, bool timing) {
  using namespace submm;
  ExperimentSpec spec = experiment_from_json(ReadJsonFile(o.spec));
  if (timing) spec.timing = true;
  if (o.seed) {
    for (auto& s : spec.seeds) s += *o.seed;
  }
  const ExperimentResult r = run_experiment(spec, o.jobs);
  json summary = r.summary;
  summary["spec"] = experiment_to_json(spec);
  summary["passed"] = r.passed();
  if (o.out.empty()) {
    std::cout << r.table.to_csv();
    std::cerr << summary.dump(2) << "\n";
  } else {
    const std::string stem = spec.output.empty() ? spec.name : spec.output;
    fs::create_directories(o.out);
    WriteText((fs::path(o.out) / (stem + ".csv")).string(), r.table.to_csv());
    WriteJson((fs::path(o.out) / (stem + ".json")).string(), summary);
  }
  for (const auto& f : r.failures) std::cerr << "FAIL " << f << "\n";
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorize-minimize and minorize-maximize for submodular functions"};
  app.require_subcommand(1);

  CommonOptions common;
  MinimizeOptions min_opts;
  MaximizeOptions max_opts;
  std::size_t verify_samples = 8;
  bool timing = false;

  auto* minimize = app.add_subcommand("minimize", "Run MMin on a problem spec");
  AddCommon(minimize, common);
  minimize->add_option("--variant", min_opts.variant, "grow, shrink, bar, alternate or constrained")
      ->check(CLI::IsMember({"grow", "shrink", "bar", "alternate", "constrained"}));
  minimize->add_option("--start", min_opts.start, "Initial set")->check(CLI::IsMember({"empty", "full"}));
  minimize->add_option("--eta", min_opts.eta, "Relative progress threshold");
  minimize->add_option("--constraint", min_opts.constraint, "Constraint JSON (inline or file)");
  minimize->add_flag("--brute-force-certify", min_opts.certify, "Compare against exhaustive search (n <= 20)");

  auto* maximize = app.add_subcommand("maximize", "Run MMax on a problem spec");
  AddCommon(maximize, common);
  maximize->add_option("--schedule", max_opts.schedule, "Subgradient schedule")
      ->check(CLI::IsMember({"rp", "ra", "rls", "dls", "bg", "rg", "greedy", "knapsack"}));
  maximize->add_option("--reps", max_opts.reps, "Repetitions for randomized schedules")->check(CLI::PositiveNumber);
  maximize->add_option("--eta", max_opts.eta, "Relative progress threshold")->check(CLI::NonNegativeNumber);
  maximize->add_option("--constraint", max_opts.constraint, "Constraint JSON (inline or file)");
  maximize->add_flag("--brute-force-certify", max_opts.certify, "Compare against exhaustive search (n <= 20)");
  maximize->add_flag("--enumerate-triples", max_opts.enumerate_triples, "Knapsack: restart from all small prefixes");

  auto* prune = app.add_subcommand("prune", "Emit the lattice [A, B] and the tightened [A+, B+]");
  AddCommon(prune, common);

  auto* verify = app.add_subcommand("verify", "Exhaustively check lattice and semigradient claims (n <= 16)");
  AddCommon(verify, common);
  verify->add_option("--samples", verify_samples, "Random anchors for the semigradient checks");

  auto* bench = app.add_subcommand("bench", "Run an experiment spec and write CSV and JSON");
  AddCommon(bench, common);
  bench->add_flag("--timing", timing, "Add a wall-time column (output is then not reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*minimize) return RunMinimize(common, min_opts);
    if (*maximize) return RunMaximize(common, max_opts);
    if (*prune) return RunPrune(common);
    if (*verify) return RunVerify(common, verify_samples);
    if (*bench) return RunBench(common, timing);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
