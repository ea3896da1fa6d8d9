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

#ifndef SUBMM_HARNESS_HPP_
#define SUBMM_HARNESS_HPP_

// Experiment runner and JSON/CSV serialization.
//
// Every runner expands a grid into independent cells, solves them on up to
// `jobs` threads, and emits rows in grid order, so output bytes depend only on
// the spec. Wall time is the one nondeterministic quantity and is emitted only
// when the spec asks for it.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "submm/brute_force.hpp"
#include "submm/core.hpp"
#include "submm/functions.hpp"
#include "submm/linopt.hpp"
#include "submm/mmax.hpp"
#include "submm/mmin.hpp"
#include "submm/oracle.hpp"
#include "submm/semigradient.hpp"

namespace submm {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Problem spec: {"family", "n", "seed", "params", optional "constraint"}.

struct ProblemSpec {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  json params = json::object();
  std::optional<json> constraint;

  std::unique_ptr<SetFunction> build() const { return random_instance(family, n, seed, params); }

  ConstraintFamily build_constraint() const {
    return constraint ? constraint_from_json(*constraint, n) : ConstraintFamily::Unconstrained(n);
  }
};

inline ProblemSpec problem_from_json(const json& j) {
  ProblemSpec p;
  p.family = j.at("family").get<std::string>();
  p.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("params")) p.params = j.at("params");
  if (j.contains("constraint")) p.constraint = j.at("constraint");
  if (j.contains("n")) {
    p.n = j.at("n").get<std::size_t>();
  } else if (p.constraint) {
    auto m = constraint_ground_size(*p.constraint);
    if (!m) throw std::invalid_argument("problem spec needs n");
    p.n = *m;
  } else {
    throw std::invalid_argument("problem spec needs n");
  }
  if (p.constraint) {
    if (auto m = constraint_ground_size(*p.constraint); m && *m != p.n) {
      throw std::invalid_argument("constraint ground set size differs from n");
    }
  }
  return p;
}

inline json problem_to_json(const ProblemSpec& p) {
  json j{{"family", p.family}, {"n", p.n}, {"seed", p.seed}, {"params", p.params}};
  if (p.constraint) j["constraint"] = *p.constraint;
  return j;
}

// ---------------------------------------------------------------------------
// Report serialization. Set-valued fields use 1-based ids.

inline json set_to_json(const SubsetMask& s) { return s.one_based(); }

inline json trajectory_to_json(const std::vector<TrajectoryPoint>& t) {
  json a = json::array();
  for (const auto& p : t) {
    a.push_back({{"iteration", p.iteration}, {"set", set_to_json(p.set)}, {"value", p.value}, {"phase", p.phase}});
  }
  return a;
}

template <typename T>
inline json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json report_to_json(const MinimizeReport& r) {
  json j{{"variant", to_string(r.variant)},
         {"solution", set_to_json(r.solution)},
         {"value", r.value},
         {"iterations", r.iterations},
         {"oracle_calls", r.oracle_calls},
         {"trajectory", trajectory_to_json(r.trajectory)},
         {"curvature", optional_to_json(r.curvature)},
         {"curvature_bound", optional_to_json(r.curvature_bound)},
         {"sharp_bound", optional_to_json(r.sharp_bound)},
         {"factor", optional_to_json(r.factor)},
         {"optimum_value", optional_to_json(r.optimum_value)},
         {"first_iteration_value", optional_to_json(r.first_iteration_value)},
         {"warnings", r.warnings}};
  if (r.lattice) j["lattice"] = {{"lower", set_to_json(r.lattice->lower)}, {"upper", set_to_json(r.lattice->upper)}};
  return j;
}

inline json report_to_json(const MaximizeReport& r) {
  return json{{"schedule", to_string(r.schedule)},
              {"seed", optional_to_json(r.seed)},
              {"solution", set_to_json(r.solution)},
              {"value", r.value},
              {"iterations", r.iterations},
              {"oracle_calls", r.oracle_calls},
              {"trajectory", trajectory_to_json(r.trajectory)},
              {"local_max", r.local_max},
              {"local_optimum", r.local_optimum ? set_to_json(*r.local_optimum) : json(nullptr)},
              {"reference_value", optional_to_json(r.reference_value)},
              {"bound", optional_to_json(r.bound)},
              {"curvature", optional_to_json(r.curvature)},
              {"optimum_value", optional_to_json(r.optimum_value)},
              {"factor_certificate", optional_to_json(r.factor_certificate)},
              {"warnings", r.warnings}};
}

// Percentage of the ground set decided by an interval: 100 (1 - |B\A| / n).
inline double reduction_pct(const LatticeInterval& l) {
  const auto n = static_cast<double>(l.lower.universe());
  return 100.0 * (1.0 - static_cast<double>(l.width()) / n);
}

inline json report_to_json(const PruneReport& p) {
  return json{{"A", set_to_json(p.classic.lower)},
              {"B", set_to_json(p.classic.upper)},
              {"A_plus", set_to_json(p.tightened.lower)},
              {"B_plus", set_to_json(p.tightened.upper)},
              {"reduction_pct", reduction_pct(p.tightened)},
              {"reduction_pct_classic", reduction_pct(p.classic)},
              {"oracle_calls", p.oracle_calls}};
}

inline json claim_to_json(const ClaimResult& c) {
  return json{{"claim", c.claim},
              {"passed", c.passed},
              {"witness", c.witness ? set_to_json(*c.witness) : json(nullptr)},
              {"detail", c.detail}};
}

inline json report_to_json(const LatticeCertificate& c) {
  json claims = json::array();
  for (const auto& cl : c.claims) claims.push_back(claim_to_json(cl));
  json mins = json::array();
  for (const auto& m : c.minimizers) mins.push_back(set_to_json(m));
  return json{{"A", set_to_json(c.classic.lower)},
              {"B", set_to_json(c.classic.upper)},
              {"A_plus", set_to_json(c.tightened.lower)},
              {"B_plus", set_to_json(c.tightened.upper)},
              {"minimizers", mins},
              {"optimum_value", c.optimum_value},
              {"local_minima", c.local_minima},
              {"claims", claims},
              {"passed", c.passed()}};
}

// ---------------------------------------------------------------------------
// Trajectory and cap checks shared by the CLI and the runners. Each returns
// an empty string on success, otherwise a description of the failure.

inline std::string check_descent(const std::vector<TrajectoryPoint>& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i].value > t[i - 1].value + kTolerance) {
      return "trajectory increases at iteration " + std::to_string(t[i].iteration);
    }
  }
  return {};
}

inline std::string check_ascent(const std::vector<TrajectoryPoint>& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i].value < t[i - 1].value - kTolerance) {
      return "trajectory decreases at iteration " + std::to_string(t[i].iteration);
    }
  }
  return {};
}

inline std::string check_max_iterations(const MaximizeReport& r, std::size_t n, double eta) {
  if (!(eta > 0.0) || n < 2) return {};
  if (static_cast<double>(r.iterations) > iteration_cap(n, eta) + kTolerance) {
    return "iteration count " + std::to_string(r.iterations) + " exceeds log(n)/log(1+eta)";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Experiment spec.

struct ExperimentSpec {
  std::string name = "experiment";
  // lattice_reduction | constrained_min | max_comparison
  std::string experiment;
  std::vector<std::string> families;
  std::vector<json> params_grid{json::object()};
  std::vector<std::size_t> n;
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::string> algorithms;
  std::vector<std::string> constraints;
  std::vector<std::string> densities{"sparse"};
  std::size_t repetitions = 5;
  double eta = 0.01;
  bool certify = true;
  bool timing = false;
  std::string output;
};

inline ExperimentSpec experiment_from_json(const json& j) {
  ExperimentSpec s;
  s.name = j.value("name", s.name);
  s.experiment = j.at("experiment").get<std::string>();
  if (j.contains("families")) s.families = j.at("families").get<std::vector<std::string>>();
  if (j.contains("family")) s.families = {j.at("family").get<std::string>()};
  if (j.contains("params_grid")) s.params_grid = j.at("params_grid").get<std::vector<json>>();
  if (j.contains("params")) s.params_grid = {j.at("params")};
  if (s.params_grid.empty()) s.params_grid = {json::object()};
  if (j.contains("n")) {
    s.n = j.at("n").is_array() ? j.at("n").get<std::vector<std::size_t>>()
                               : std::vector<std::size_t>{j.at("n").get<std::size_t>()};
  }
  if (j.contains("seeds")) {
    const auto& sj = j.at("seeds");
    if (sj.is_array()) {
      s.seeds = sj.get<std::vector<std::uint64_t>>();
    } else {
      s.seeds.resize(sj.get<std::size_t>());
      std::iota(s.seeds.begin(), s.seeds.end(), std::uint64_t{0});
    }
  }
  if (j.contains("algorithms")) s.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  if (j.contains("constraints")) s.constraints = j.at("constraints").get<std::vector<std::string>>();
  if (j.contains("densities")) s.densities = j.at("densities").get<std::vector<std::string>>();
  s.repetitions = j.value("repetitions", s.repetitions);
  s.eta = j.value("eta", s.eta);
  s.certify = j.value("certify", s.certify);
  s.timing = j.value("timing", s.timing);
  s.output = j.value("output", s.output);
  if (s.repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  if (s.eta < 0.0) throw std::invalid_argument("eta must be nonnegative");
  return s;
}

inline json experiment_to_json(const ExperimentSpec& s) {
  return json{{"name", s.name},           {"experiment", s.experiment},   {"families", s.families},
              {"params_grid", s.params_grid}, {"n", s.n},                 {"seeds", s.seeds},
              {"algorithms", s.algorithms}, {"constraints", s.constraints}, {"densities", s.densities},
              {"repetitions", s.repetitions}, {"eta", s.eta},             {"certify", s.certify},
              {"timing", s.timing},         {"output", s.output}};
}

// ---------------------------------------------------------------------------
// Tables.

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// "key=value" pairs joined by ';' (keys sorted).
inline std::string params_label(const json& params) {
  std::string out;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!out.empty()) out += ';';
    out += it.key() + "=" + (it->is_number_float() ? format_number(it->get<double>()) : it->dump());
  }
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

struct ExperimentResult {
  Table table;
  json summary = json::object();
  // Asserted invariants that failed; empty means the run passed.
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

namespace detail {

// Runs cell(i) for i in [0, count) on up to `jobs` threads. Cells write only
// to their own slot, so the merged output is independent of scheduling.
inline void ParallelFor(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& cell) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) cell(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) cell(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct CellOutput {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> failures;
  json stats = json::object();
};

inline ExperimentResult Merge(std::vector<std::string> header, std::vector<CellOutput>& cells) {
  ExperimentResult r;
  r.table.header = std::move(header);
  for (auto& c : cells) {
    for (auto& row : c.rows) r.table.rows.push_back(std::move(row));
    for (auto& f : c.failures) r.failures.push_back(std::move(f));
  }
  return r;
}

using Clock = std::chrono::steady_clock;

inline std::string ElapsedMs(Clock::time_point start) {
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
  return format_number(static_cast<double>(us) / 1000.0);
}

inline double Mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lattice reduction: per instance, the classic interval [A, B] from MMin-III
// and the tightened [A+, B+] from MMin-I/II.

inline ExperimentResult run_lattice_reduction(const ExperimentSpec& spec, std::size_t jobs = 1) {
  struct Cell {
    std::string family;
    std::size_t params_index;
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Cell> grid;
  for (const auto& fam : spec.families) {
    for (std::size_t p = 0; p < spec.params_grid.size(); ++p) {
      for (auto n : spec.n) {
        for (auto seed : spec.seeds) grid.push_back({fam, p, n, seed});
      }
    }
  }
  std::vector<detail::CellOutput> out(grid.size());
  detail::ParallelFor(grid.size(), jobs, [&](std::size_t i) {
    const Cell& c = grid[i];
    const auto start = detail::Clock::now();
    auto f = random_instance(c.family, c.n, c.seed, spec.params_grid[c.params_index]);
    const PruneReport p = prune(*f);
    auto& o = out[i];
    const double red_tight = reduction_pct(p.tightened);
    const double red_classic = reduction_pct(p.classic);
    o.stats = {{"tight", red_tight}, {"classic", red_classic},
               {"a_plus", p.tightened.lower.size()}, {"b_plus", p.tightened.upper.size()}};
    if (p.iterations_grow > c.n || p.iterations_shrink > c.n) {
      o.failures.push_back(c.family + " n=" + std::to_string(c.n) + " seed=" + std::to_string(c.seed) +
                           ": more than n outer iterations");
    }
    if (!p.classic.lower.is_subset_of(p.tightened.lower) || !p.tightened.lower.is_subset_of(p.tightened.upper) ||
        !p.tightened.upper.is_subset_of(p.classic.upper)) {
      o.failures.push_back(c.family + " n=" + std::to_string(c.n) + " seed=" + std::to_string(c.seed) +
                           ": intervals not nested");
    }
    std::string opt_inside = "";
    if (spec.certify && c.n <= kMaxExhaustiveN) {
      auto truth = brute_minimize(*f);
      bool inside = true;
      for (const auto& x : truth.optimizers) {
        inside = inside && p.tightened.contains(x);
      }
      opt_inside = inside ? "1" : "0";
      if (!inside) {
        o.failures.push_back(c.family + " n=" + std::to_string(c.n) + " seed=" + std::to_string(c.seed) +
                             ": minimizer outside [A+, B+]");
      }
    }
    std::vector<std::string> row{c.family,
                                 params_label(spec.params_grid[c.params_index]),
                                 std::to_string(c.n),
                                 std::to_string(c.seed),
                                 std::to_string(p.classic.lower.size()),
                                 std::to_string(p.classic.upper.size()),
                                 std::to_string(p.tightened.lower.size()),
                                 std::to_string(p.tightened.upper.size()),
                                 std::to_string(p.classic.width()),
                                 std::to_string(p.tightened.width()),
                                 format_number(red_classic),
                                 format_number(red_tight),
                                 opt_inside,
                                 std::to_string(p.oracle_calls)};
    if (spec.timing) row.push_back(detail::ElapsedMs(start));
    o.rows.push_back(std::move(row));
  });
  std::vector<std::string> header{"family",     "params",     "n",           "seed",
                                  "A",          "B",          "A_plus",      "B_plus",
                                  "width_AB",   "width_plus", "reduction_III", "reduction_I_II",
                                  "opt_inside", "oracle_calls"};
  if (spec.timing) header.push_back("wall_ms");
  ExperimentResult r = detail::Merge(std::move(header), out);

  // Averages per (family, params) over n and seeds; the CM lambda sweep is
  // read off the mean |A+| and |B+| at each grid point.
  json groups = json::array();
  double all_tight = 0.0, all_classic = 0.0;
  for (const auto& fam : spec.families) {
    for (std::size_t p = 0; p < spec.params_grid.size(); ++p) {
      std::vector<double> t, cl, ap, bp;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].family != fam || grid[i].params_index != p) continue;
        t.push_back(out[i].stats["tight"].get<double>());
        cl.push_back(out[i].stats["classic"].get<double>());
        ap.push_back(out[i].stats["a_plus"].get<double>());
        bp.push_back(out[i].stats["b_plus"].get<double>());
      }
      groups.push_back({{"family", fam},
                        {"params", spec.params_grid[p]},
                        {"instances", t.size()},
                        {"mean_reduction_I_II", detail::Mean(t)},
                        {"mean_reduction_III", detail::Mean(cl)},
                        {"mean_A_plus", detail::Mean(ap)},
                        {"mean_B_plus", detail::Mean(bp)}});
      all_tight += std::accumulate(t.begin(), t.end(), 0.0);
      all_classic += std::accumulate(cl.begin(), cl.end(), 0.0);
    }
  }
  const double count = std::max<double>(1.0, static_cast<double>(grid.size()));
  r.summary = {{"experiment", "lattice_reduction"},
               {"name", spec.name},
               {"instances", grid.size()},
               {"mean_reduction_I_II", all_tight / count},
               {"mean_reduction_III", all_classic / count},
               {"groups", groups},
               {"failures", r.failures}};
  return r;
}

// ---------------------------------------------------------------------------
// Constrained minimization on small structured instances.

// rows x cols grid; `diagonals` adds both diagonals of every cell.
inline Graph grid_graph(std::size_t rows, std::size_t cols, bool diagonals) {
  Graph g;
  g.vertices = rows * cols;
  auto id = [&](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.edges.emplace_back(id(r, c), id(r + 1, c));
      if (diagonals && r + 1 < rows && c + 1 < cols) {
        g.edges.emplace_back(id(r, c), id(r + 1, c + 1));
        g.edges.emplace_back(id(r, c + 1), id(r + 1, c));
      }
    }
  }
  g.s = 0;
  g.t = g.vertices - 1;
  return g;
}

// K_{a,b}; left vertices 0..a-1.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g;
  g.vertices = a + b;
  g.bipartition = std::vector<int>(a + b, 1);
  for (std::size_t i = 0; i < a; ++i) {
    (*g.bipartition)[i] = 0;
    for (std::size_t j = 0; j < b; ++j) g.edges.emplace_back(i, a + j);
  }
  return g;
}

// Structured family for a constraint name and density. Sparse instances use
// square grids, dense ones grids with diagonals (K_{3,3} for matchings); all
// stay at or below 12 ground elements.
inline ConstraintFamily structured_constraint(const std::string& kind, const std::string& density, std::size_t n) {
  const bool dense = density == "dense";
  if (!dense && density != "sparse") throw std::invalid_argument("density must be sparse or dense");
  if (kind == "tree") return ConstraintFamily::SpanningTree(dense ? grid_graph(2, 3, true) : grid_graph(3, 3, false));
  if (kind == "path") return ConstraintFamily::ShortestPath(dense ? grid_graph(2, 3, true) : grid_graph(3, 3, false));
  if (kind == "matching") {
    return ConstraintFamily::PerfectMatching(dense ? complete_bipartite(3, 3) : grid_graph(2, 4, false));
  }
  if (kind == "cardinality") return ConstraintFamily::CardinalityLower(n, dense ? n / 2 : n / 4);
  throw std::invalid_argument("unknown constraint kind: " + kind);
}

// Parameters that keep each family monotone nondecreasing.
inline json monotone_params(const std::string& family, json params) {
  if (family == "cm") {
    if (!params.contains("mode")) params["mode"] = "plain";
    if (!params.contains("w2_lo")) params["w2_lo"] = 0.0;
  }
  if (family == "bipartite" && !params.contains("lambda")) params["lambda"] = 0.0;
  return params;
}

inline ExperimentResult run_constrained_min(const ExperimentSpec& spec, std::size_t jobs = 1) {
  struct Cell {
    std::string family;
    std::size_t params_index;
    std::string constraint;
    std::string density;
    std::uint64_t seed;
  };
  const std::size_t card_n = spec.n.empty() ? 12 : spec.n.front();
  std::vector<Cell> grid;
  for (const auto& fam : spec.families) {
    for (std::size_t p = 0; p < spec.params_grid.size(); ++p) {
      for (const auto& con : spec.constraints) {
        for (const auto& den : spec.densities) {
          for (auto seed : spec.seeds) grid.push_back({fam, p, con, den, seed});
        }
      }
    }
  }
  std::vector<detail::CellOutput> out(grid.size());
  detail::ParallelFor(grid.size(), jobs, [&](std::size_t i) {
    const Cell& c = grid[i];
    const auto start = detail::Clock::now();
    const ConstraintFamily cf = structured_constraint(c.constraint, c.density, card_n);
    const std::size_t n = cf.size();
    auto f = random_instance(c.family, n, c.seed, monotone_params(c.family, spec.params_grid[c.params_index]));
    MinimizeReport rep = constrained_mmin(*f, cf, kDefaultConstrainedEta, spec.certify && n <= kMaxExhaustiveN);
    auto& o = out[i];
    const std::string tag = c.family + "/" + c.constraint + "/" + c.density + " seed=" + std::to_string(c.seed);
    const double mu = rep.first_iteration_value.value_or(rep.value);
    if (rep.value > mu + kTolerance) o.failures.push_back(tag + ": MMin worse than MU");
    if (auto d = check_descent(rep.trajectory); !d.empty()) o.failures.push_back(tag + ": " + d);
    if (!is_feasible(rep.solution, cf)) o.failures.push_back(tag + ": infeasible output");
    double factor_mu = std::nan("");
    if (rep.optimum_value) {
      const double opt = *rep.optimum_value;
      factor_mu = approximation_ratio(mu, opt);
      if (rep.sharp_bound && rep.value > *rep.sharp_bound * opt + 1e-6) {
        o.failures.push_back(tag + ": curvature bound violated");
      }
    }
    o.stats = {{"factor", rep.factor.value_or(std::nan(""))}, {"factor_mu", factor_mu}};
    std::vector<std::string> row{c.family,
                                 params_label(spec.params_grid[c.params_index]),
                                 c.constraint,
                                 c.density,
                                 std::to_string(n),
                                 std::to_string(c.seed),
                                 format_number(rep.curvature.value_or(std::nan(""))),
                                 format_number(mu),
                                 format_number(rep.value),
                                 format_number(rep.optimum_value.value_or(std::nan(""))),
                                 format_number(factor_mu),
                                 format_number(rep.factor.value_or(std::nan(""))),
                                 format_number(rep.curvature_bound.value_or(std::nan(""))),
                                 format_number(rep.sharp_bound.value_or(std::nan(""))),
                                 std::to_string(rep.iterations),
                                 std::to_string(rep.oracle_calls)};
    if (spec.timing) row.push_back(detail::ElapsedMs(start));
    o.rows.push_back(std::move(row));
  });
  std::vector<std::string> header{"family",    "params",   "constraint", "density",      "n",
                                  "seed",      "kappa",    "mu_value",   "mmin_value",   "opt_value",
                                  "factor_mu", "factor_mmin", "bound_n", "bound_sharp", "iterations",
                                  "oracle_calls"};
  if (spec.timing) header.push_back("wall_ms");
  ExperimentResult r = detail::Merge(std::move(header), out);

  json groups = json::array();
  for (const auto& fam : spec.families) {
    for (const auto& con : spec.constraints) {
      std::vector<double> fm, fu;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].family != fam || grid[i].constraint != con) continue;
        const double a = out[i].stats["factor"].get<double>();
        const double b = out[i].stats["factor_mu"].get<double>();
        if (!std::isnan(a)) fm.push_back(a);
        if (!std::isnan(b)) fu.push_back(b);
      }
      json g{{"family", fam}, {"constraint", con}, {"instances", fm.size()}};
      if (!fm.empty()) {
        g["mean_factor_mmin"] = detail::Mean(fm);
        g["worst_factor_mmin"] = *std::max_element(fm.begin(), fm.end());
        g["mean_factor_mu"] = detail::Mean(fu);
        g["worst_factor_mu"] = *std::max_element(fu.begin(), fu.end());
      }
      groups.push_back(std::move(g));
    }
  }
  r.summary = {{"experiment", "constrained_min"},
               {"name", spec.name},
               {"instances", grid.size()},
               {"groups", groups},
               {"failures", r.failures}};
  return r;
}

// ---------------------------------------------------------------------------
// Unconstrained maximization schedules on diversity-relevance instances.

inline MaximizeReport run_schedule(const SetFunction& f, const std::string& name, const ScheduleConfig& cfg) {
  if (name == "rp") return mmax_rp_ra(f, cfg, false);
  if (name == "ra") return mmax_rp_ra(f, cfg, true);
  if (name == "rls") return mmax_rls(f, cfg);
  if (name == "dls") return mmax_dls(f, cfg);
  if (name == "bg") return mmax_bg(f, cfg);
  if (name == "rg") return mmax_rg(f, cfg);
  if (name == "rs") {
    // Uniformly random set, best of the repetitions.
    const std::uint64_t before = f.eval_count();
    std::mt19937_64 rng(cfg.seed);
    std::bernoulli_distribution coin(0.5);
    MaximizeReport r;
    for (std::size_t rep = 0; rep < std::max<std::size_t>(1, cfg.repetitions); ++rep) {
      SubsetMask x(f.size());
      for (std::size_t j = 0; j < f.size(); ++j) {
        if (coin(rng)) x.insert(j);
      }
      const double v = f(x);
      if (rep == 0 || v > r.value) {
        r.solution = x;
        r.value = v;
      }
    }
    r.trajectory.push_back({0, r.solution, r.value, "sample"});
    r.seed = cfg.seed;
    r.oracle_calls = f.eval_count() - before;
    return r;
  }
  throw std::invalid_argument("unknown schedule: " + name);
}

inline ExperimentResult run_max_comparison(const ExperimentSpec& spec, std::size_t jobs = 1) {
  struct Cell {
    std::string family;
    std::size_t params_index;
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<std::string> schedules = spec.algorithms;
  if (schedules.empty()) schedules = {"dls", "bg", "rg", "rls", "ra", "rp", "rs"};
  std::vector<std::string> families = spec.families;
  if (families.empty()) families = {"diversity"};
  std::vector<Cell> grid;
  for (const auto& fam : families) {
    for (std::size_t p = 0; p < spec.params_grid.size(); ++p) {
      for (auto n : spec.n) {
        for (auto seed : spec.seeds) grid.push_back({fam, p, n, seed});
      }
    }
  }
  std::vector<detail::CellOutput> out(grid.size());
  detail::ParallelFor(grid.size(), jobs, [&](std::size_t i) {
    const Cell& c = grid[i];
    auto f = random_instance(c.family, c.n, c.seed, spec.params_grid[c.params_index]);
    auto& o = out[i];
    std::optional<double> opt;
    if (spec.certify && c.n <= kMaxExhaustiveN) opt = brute_maximize(*f).optimum_value;
    json factors = json::object();
    for (std::size_t k = 0; k < schedules.size(); ++k) {
      const auto& s = schedules[k];
      const auto start = detail::Clock::now();
      const bool randomized = s == "rp" || s == "ra" || s == "rls" || s == "rg" || s == "rs";
      ScheduleConfig cfg;
      cfg.eta = spec.eta;
      cfg.seed = c.seed * 1000003 + k;
      cfg.repetitions = randomized ? spec.repetitions : 1;
      MaximizeReport rep = run_schedule(*f, s, cfg);
      const std::string tag = c.family + " n=" + std::to_string(c.n) + " seed=" + std::to_string(c.seed) + " " + s;
      if (auto d = check_ascent(rep.trajectory); !d.empty()) o.failures.push_back(tag + ": " + d);
      if (s == "ra" || s == "rls" || s == "dls") {
        if (auto d = check_max_iterations(rep, c.n, cfg.eta); !d.empty()) o.failures.push_back(tag + ": " + d);
      }
      if ((s == "rls" || s == "dls") && !rep.local_max) o.failures.push_back(tag + ": local maximum check failed");
      if (s == "bg" && rep.reference_value && rep.value < *rep.reference_value - kTolerance) {
        o.failures.push_back(tag + ": below the direct bi-directional greedy set");
      }
      double factor = std::nan("");
      if (opt) {
        factor = approximation_ratio(rep.value, *opt);
        // Deterministic per-instance guarantees.
        const bool guaranteed = s == "dls" || s == "bg" || s == "rls";
        if (guaranteed && rep.bound && factor < *rep.bound - kTolerance) {
          o.failures.push_back(tag + ": factor " + format_number(factor) + " below " + format_number(*rep.bound));
        }
      }
      factors[s] = factor;
      std::vector<std::string> row{c.family,
                                   params_label(spec.params_grid[c.params_index]),
                                   std::to_string(c.n),
                                   std::to_string(c.seed),
                                   s,
                                   format_number(rep.value),
                                   format_number(opt.value_or(std::nan(""))),
                                   format_number(factor),
                                   std::to_string(rep.iterations),
                                   std::to_string(rep.oracle_calls),
                                   rep.local_max ? "1" : "0"};
      if (spec.timing) row.push_back(detail::ElapsedMs(start));
      o.rows.push_back(std::move(row));
    }
    o.stats = factors;
  });
  std::vector<std::string> header{"family", "params", "n", "seed", "schedule", "value", "opt_value", "factor",
                                  "iterations", "oracle_calls", "local_max"};
  if (spec.timing) header.push_back("wall_ms");
  ExperimentResult r = detail::Merge(std::move(header), out);

  // Mean factors are reported, not asserted.
  json per = json::object();
  for (const auto& s : schedules) {
    std::vector<double> v;
    for (const auto& o : out) {
      const double x = o.stats[s].get<double>();
      if (!std::isnan(x)) v.push_back(x);
    }
    if (v.empty()) continue;
    per[s] = {{"mean_factor", detail::Mean(v)}, {"worst_factor", *std::min_element(v.begin(), v.end())}};
  }
  r.summary = {{"experiment", "max_comparison"},
               {"name", spec.name},
               {"instances", grid.size()},
               {"schedules", per},
               {"failures", r.failures}};
  return r;
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t jobs = 1) {
  if (spec.experiment == "lattice_reduction") return run_lattice_reduction(spec, jobs);
  if (spec.experiment == "constrained_min") return run_constrained_min(spec, jobs);
  if (spec.experiment == "max_comparison") return run_max_comparison(spec, jobs);
  throw std::invalid_argument("unknown experiment: " + spec.experiment);
}

}  // namespace submm

#endif  // SUBMM_HARNESS_HPP_
