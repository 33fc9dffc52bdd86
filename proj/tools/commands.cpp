// Copyright 2026 The vqsdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vqsdp/bounds.hpp"
#include "vqsdp/errors.hpp"
#include "vqsdp/problems.hpp"
#include "vqsdp/reference.hpp"
#include "vqsdp/rng.hpp"
#include "vqsdp/simulator.hpp"
#include "vqsdp/solvers.hpp"

namespace vqsdp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GenOptions {
  std::string kind;
  std::optional<int> cycle, path, complete, random;
  double edge_probability = 0.5;
  std::string form = "standard";
  int dim = 4;
  int constraints = 3;
  int out_dim = 2;
  std::uint64_t seed = 0;
  bool aligned = false;
  double trace = 1.0;
  std::string out;
};

struct SolveOptions {
  std::string instance;
  std::string solver;
  std::vector<long long> shots{10, 50, 100};
  bool exact = false;
  int repeats = 20;
  int depth = 4;
  std::uint64_t seed = 0;
  double epsilon = 1e-2;
  double eta = 0.1;
  double eta1 = 0.1;
  double eta2 = 0.1;
  double mu = 2.0;
  double gamma = 10.0;
  double lambda_prox = 2.0;
  int inner_cap = 500;
  int outer_cap = 100;
  std::string sampler = "binomial";
  std::string out = "runs";
  double tolerance = 1e-7;
};

struct OracleCmdOptions {
  std::string instance;
  double tolerance = 1e-7;
  long long max_iterations = 100000;
};

struct BoundsOptions {
  std::string instance;
  std::string solver;
  int depth = 4;
  std::uint64_t seed = 0;
  double eta = 0.1;
  double mu = 2.0;
  double gamma = 10.0;
  double penalty = 1.0;
  int outer = 10;
};

Graph make_graph(const GenOptions& o) {
  int chosen = int(o.cycle.has_value()) + int(o.path.has_value()) + int(o.complete.has_value()) +
               int(o.random.has_value());
  if (chosen != 1) throw UsageError("maxcut needs exactly one of --cycle, --path, --complete, --random");
  if (o.cycle) return Graph::cycle(*o.cycle);
  if (o.path) return Graph::path(*o.path);
  if (o.complete) return Graph::complete(*o.complete);
  return Graph::random(*o.random, o.edge_probability, o.seed);
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  SdpInstance instance;
  if (o.kind == "maxcut") {
    Graph g = make_graph(o);
    if (o.form == "general") {
      instance = maxcut_general(g);
    } else if (o.form == "standard") {
      instance = maxcut_sdp(g);
    } else {
      throw UsageError("--form must be standard or general");
    }
  } else if (o.kind == "random-eq" || o.kind == "random-ineq") {
    RandomStandardOptions opts;
    opts.trace = o.trace;
    opts.aligned_objective = o.aligned;
    auto kind = o.kind == "random-eq" ? ConstraintKind::Equality : ConstraintKind::Inequality;
    instance = random_feasible_standard(o.dim, o.constraints, kind, o.seed, opts);
  } else {
    instance = random_general(o.dim, o.out_dim, o.seed);
  }
  save_instance(instance, o.out);
  out << "wrote " << o.out << " (" << instance.metadata.name << ", N = " << instance.dim() << ")\n";
  if (instance.feasible_witness) {
    out << "witness residual: " << constraint_violation(instance, *instance.feasible_witness) << "\n";
  } else {
    out << "witness residual: none\n";
  }
  return kExitOk;
}

void check_compatible(const SdpInstance& instance, const std::string& solver) {
  bool ok = false;
  if (solver == "gf") ok = instance.is_general();
  if (solver == "ec") ok = !instance.is_general() && instance.standard().kind == ConstraintKind::Equality;
  if (solver == "ic") ok = !instance.is_general() && instance.standard().kind == ConstraintKind::Inequality;
  if (!ok) throw FormError("solver " + solver + " does not accept instance '" + instance.metadata.name + "'");
}

struct RunOutcome {
  Trace trace;
  RunStatus status = RunStatus::IterationCapped;
  long long shots_used = 0;
  bool diverged = false;
};

RunOutcome run_solver(const SdpInstance& instance, const std::string& solver, const SolverConfig& config) {
  RunOutcome r;
  try {
    if (solver == "gf") {
      auto res = ivqagf(instance, config);
      r.trace = std::move(res.trace);
      r.status = res.status;
      r.shots_used = res.shots_used;
    } else if (solver == "ec") {
      auto res = ivqaec(instance, config);
      r.trace = std::move(res.trace);
      r.status = res.status;
      r.shots_used = res.shots_used;
    } else {
      auto res = ivqaic(instance, config);
      r.trace = std::move(res.trace);
      r.status = res.status;
      r.shots_used = res.shots_used;
    }
  } catch (const DivergenceError& e) {
    r.trace = e.trace();
    r.diverged = true;
  }
  return r;
}

int trace_duals(const Trace& trace) { return trace.empty() ? 0 : static_cast<int>(trace.front().duals.size()); }

std::string instance_name(const SdpInstance& instance, const std::string& path) {
  if (!instance.metadata.name.empty()) return instance.metadata.name;
  return fs::path(path).stem().string();
}

int cmd_solve(const SolveOptions& o, bool shots_given, std::ostream& out, std::ostream& err) {
  if (o.repeats < 1) throw UsageError("--repeats must be at least 1");
  if (o.solver != "gf" && o.solver != "ec" && o.solver != "ic") throw UsageError("--solver must be gf, ec or ic");
  if (o.sampler != "binomial" && o.sampler != "bitstring") throw UsageError("--sampler must be binomial or bitstring");
  for (long long s : o.shots) {
    if (s < 1) throw UsageError("--shots entries must be positive");
  }

  SdpInstance instance = load_instance(o.instance);
  check_compatible(instance, o.solver);

  SolverConfig base;
  base.epsilon = o.epsilon;
  base.eta = o.eta;
  base.eta1 = o.eta1;
  base.eta2 = o.eta2;
  base.mu_growth = o.mu;
  base.gamma = o.gamma;
  base.lambda_prox = o.lambda_prox;
  base.inner_max_iters = o.inner_cap;
  base.outer_max_iters = o.outer_cap;
  base.depth = o.depth;
  try {
    base.validate();
  } catch (const ParamError& e) {
    throw UsageError(e.what());
  }

  // Groups: an optional exact control followed by the shot settings.
  std::vector<std::optional<long long>> groups;
  if (o.exact) groups.emplace_back(std::nullopt);
  if (shots_given || !o.exact) {
    for (long long s : o.shots) groups.emplace_back(s);
  }

  const std::string name = instance_name(instance, o.instance);
  const fs::path root = fs::path(o.out) / name / o.solver;
  fs::create_directories(root);

  struct GroupRuns {
    std::string label;
    std::vector<std::uint64_t> seeds;
    std::vector<RunOutcome> runs;
  };
  std::vector<GroupRuns> results;
  Sampler sampler = o.sampler == "bitstring" ? Sampler::Bitstring : Sampler::Binomial;

  for (const auto& shots : groups) {
    GroupRuns g;
    g.label = shots ? std::to_string(*shots) : "exact";
    fs::create_directories(root / g.label);
    for (int i = 0; i < o.repeats; ++i) {
      std::uint64_t run_seed = o.seed + static_cast<std::uint64_t>(i);
      SolverConfig config = base;
      config.seed = run_seed;
      config.policy = shots ? ShotPolicy::sampled(*shots, derive_seed(run_seed, static_cast<std::uint64_t>(*shots)), sampler)
                            : ShotPolicy::exact();
      RunOutcome run = run_solver(instance, o.solver, config);
      write_trace_csv(run.trace, trace_duals(run.trace),
                      (root / g.label / ("run-" + std::to_string(run_seed) + ".csv")).string());
      g.seeds.push_back(run_seed);
      g.runs.push_back(std::move(run));
    }
    out << o.solver << " " << g.label << ": " << o.repeats << " runs\n";
    results.push_back(std::move(g));
  }

  ordered_json reference;
  double reference_value = 0.0;
  try {
    OracleOptions oopts;
    oopts.tolerance = o.tolerance;
    OracleResult oracle = oracle_solve_any(instance, oopts);
    reference_value = oracle.optimal_value;
    reference = {{"source", "oracle"}, {"value", reference_value}, {"residual", oracle.residual}};
  } catch (const OracleError& e) {
    // Best-known: largest final objective among runs that end feasible, else among all runs.
    double best_feasible = -INFINITY, best_any = -INFINITY;
    for (const auto& g : results) {
      for (const auto& run : g.runs) {
        if (run.trace.empty()) continue;
        const TraceRow& last = run.trace.back();
        if (!std::isfinite(last.objective)) continue;
        best_any = std::max(best_any, last.objective);
        if (last.constraint_violation <= o.epsilon) best_feasible = std::max(best_feasible, last.objective);
      }
    }
    reference_value = std::isfinite(best_feasible) ? best_feasible : best_any;
    if (!std::isfinite(reference_value)) reference_value = 0.0;
    reference = {{"source", "best-known"}, {"value", reference_value}, {"oracle_error", e.what()}};
    err << "warning: oracle failed (" << e.what() << "); gaps are measured against the best-known value\n";
  }

  ordered_json summary;
  summary["schema"] = kSummarySchema;
  summary["instance"] = name;
  summary["instance_path"] = o.instance;
  summary["solver"] = o.solver;
  summary["config"] = {{"depth", o.depth},        {"seed", o.seed},         {"repeats", o.repeats},
                       {"epsilon", o.epsilon},    {"eta", o.eta},           {"eta1", o.eta1},
                       {"eta2", o.eta2},          {"mu", o.mu},             {"gamma", o.gamma},
                       {"lambda_prox", o.lambda_prox}, {"inner_cap", o.inner_cap}, {"outer_cap", o.outer_cap},
                       {"sampler", o.sampler}};
  summary["reference"] = reference;
  ordered_json jgroups = ordered_json::array();
  for (const auto& g : results) {
    std::vector<Trace> traces;
    ordered_json runs = ordered_json::array();
    for (std::size_t i = 0; i < g.runs.size(); ++i) {
      const RunOutcome& run = g.runs[i];
      traces.push_back(run.trace);
      ordered_json jr;
      jr["seed"] = g.seeds[i];
      jr["trace"] = g.label + "/run-" + std::to_string(g.seeds[i]) + ".csv";
      jr["status"] = run.diverged ? "diverged" : to_string(run.status);
      jr["iterations"] = run.trace.size();
      jr["final_objective"] = run.trace.empty() ? 0.0 : run.trace.back().objective;
      jr["final_constraint_violation"] = run.trace.empty() ? 0.0 : run.trace.back().constraint_violation;
      jr["shots_used"] = run.shots_used;
      runs.push_back(std::move(jr));
    }
    GapCurve curve = gap_curve(traces, reference_value);
    ordered_json jg;
    jg["shots"] = g.label == "exact" ? ordered_json("exact") : ordered_json(std::stoll(g.label));
    jg["runs"] = std::move(runs);
    jg["gap_mean"] = curve.mean;
    jg["gap_variance"] = curve.variance;
    jgroups.push_back(std::move(jg));
  }
  summary["groups"] = std::move(jgroups);

  std::ofstream file(root / "summary.json");
  if (!file) throw Error("cannot write " + (root / "summary.json").string());
  file << summary.dump(2) << "\n";
  out << "summary: " << (root / "summary.json").string() << "\n";
  return kExitOk;
}

int cmd_oracle(const OracleCmdOptions& o, std::ostream& out) {
  SdpInstance instance = load_instance(o.instance);
  OracleOptions opts;
  opts.tolerance = o.tolerance;
  opts.max_iterations = o.max_iterations;
  out << oracle_result_to_json(oracle_solve_any(instance, opts)) << "\n";
  return kExitOk;
}

int qubits_for(int dim) {
  int n = 0;
  while ((1 << n) < dim) ++n;
  return n;
}

int cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  if (o.solver != "ec" && o.solver != "ic") throw UsageError("bounds supports --solver ec or ic");
  if (o.outer < 1) throw UsageError("--outer must be at least 1");
  SdpInstance instance = load_instance(o.instance);
  check_compatible(instance, o.solver);
  const StandardForm& form = instance.standard();

  Ansatz ansatz = Ansatz::hardware_efficient(qubits_for(form.c.dim()), o.depth);
  const int r = ansatz.param_count();
  const auto norms = ansatz.generator_norms();
  const int m = form.constraints.num_constraints();

  BoundReport report;
  report.solver = o.solver;
  report.r = r;
  report.L_h.emplace_back("C", lip_expectation(form.c.spectral_norm(), norms, r));
  for (int i = 0; i < m; ++i) {
    report.L_h.emplace_back("A_" + std::to_string(i + 1),
                            lip_expectation(form.constraints.op(i).spectral_norm(), norms, r));
  }

  RealVector theta1 = random_parameters(r, derive_seed(o.seed, 1));
  RealVector theta = random_parameters(r, derive_seed(o.seed, 3));
  RealVector y0 = RealVector::Zero(m);
  Theorem1Diagnostics d = theorem1_diagnostics(form, ansatz, theta1, y0, o.eta, theta, o.mu, o.outer);
  report.L_f = d.L_f;
  report.L_A = d.L_A;
  report.y_max = d.y_max;
  report.nu = d.nu;
  report.Q = d.Q;
  report.epsilon_k = d.epsilon_k;
  if (o.solver == "ec") {
    report.L_c_y = smoothness_ec(form, y0, o.penalty, form.trace_bound(), norms, r);
  } else {
    report.L_gamma_ybar = smoothness_ic(form, RealVector::Zero(m - 1), o.gamma, norms, r);
  }
  out << bound_report_to_json(report) << "\n";
  return kExitOk;
}

void add_instance_option(CLI::App* cmd, std::string& target) {
  cmd->add_option("--instance,instance", target, "Instance JSON file")->required()->check(CLI::ExistingFile);
}

}  // namespace

GapCurve gap_curve(const std::vector<Trace>& traces, double reference) {
  GapCurve curve;
  std::size_t length = 0;
  for (const auto& t : traces) length = std::max(length, t.size());
  curve.mean.assign(length, 0.0);
  curve.variance.assign(length, 0.0);
  std::size_t used = 0;
  for (const auto& t : traces) used += t.empty() ? 0 : 1;
  if (used == 0) return curve;
  for (std::size_t k = 0; k < length; ++k) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& t : traces) {
      if (t.empty()) continue;
      double gap = std::abs(t[std::min(k, t.size() - 1)].objective - reference);
      sum += gap;
      sum_sq += gap * gap;
    }
    double mean = sum / static_cast<double>(used);
    curve.mean[k] = mean;
    curve.variance[k] = std::max(0.0, sum_sq / static_cast<double>(used) - mean * mean);
  }
  return curve;
}

std::vector<double> moving_average(const std::vector<double>& values, int window) {
  if (window < 1) throw ParamError("moving_average: window must be positive");
  std::vector<double> out(values.size(), 0.0);
  double running = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    running += values[i];
    if (i >= static_cast<std::size_t>(window)) running -= values[i - window];
    std::size_t count = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    out[i] = running / static_cast<double>(count);
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational SDP solvers on a statevector simulator", "vqsdp"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("kind", gen.kind, "Instance family")
      ->required()
      ->check(CLI::IsMember({"maxcut", "random-eq", "random-ineq", "random-general"}));
  gen_cmd->add_option("--cycle", gen.cycle, "MaxCut on the cycle C_V");
  gen_cmd->add_option("--path", gen.path, "MaxCut on the path P_V");
  gen_cmd->add_option("--complete", gen.complete, "MaxCut on the complete graph K_V");
  gen_cmd->add_option("--random", gen.random, "MaxCut on G(V, p)");
  gen_cmd->add_option("--p", gen.edge_probability, "Edge probability for --random");
  gen_cmd->add_option("--form", gen.form, "MaxCut encoding: standard or general");
  gen_cmd->add_option("--dim", gen.dim, "Matrix dimension N");
  gen_cmd->add_option("--constraints", gen.constraints, "Number of constraints M");
  gen_cmd->add_option("--out-dim", gen.out_dim, "Output dimension of the map (random-general)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_flag("--aligned", gen.aligned, "Objective aligned with the feasible witness");
  gen_cmd->add_option("--trace", gen.trace, "Trace bound of the witness");
  gen_cmd->add_option("--out", gen.out, "Output path")->required();

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run a solver over shot settings and repeats");
  add_instance_option(solve_cmd, solve.instance);
  solve_cmd->add_option("--solver", solve.solver, "gf, ec or ic")->required();
  auto* shots_opt = solve_cmd->add_option("--shots", solve.shots, "Shots per measured term")->delimiter(',');
  solve_cmd->add_flag("--exact", solve.exact, "Add an exact-expectation control group");
  solve_cmd->add_option("--repeats", solve.repeats, "Runs per shot setting");
  solve_cmd->add_option("--depth", solve.depth, "Ansatz depth");
  solve_cmd->add_option("--seed", solve.seed, "Base seed; run i uses seed + i");
  solve_cmd->add_option("--epsilon", solve.epsilon, "Stationarity tolerance");
  solve_cmd->add_option("--eta", solve.eta, "Step size (ec initial dual step, ic dual step)");
  solve_cmd->add_option("--eta1", solve.eta1, "gf step for mu");
  solve_cmd->add_option("--eta2", solve.eta2, "gf step for theta2");
  solve_cmd->add_option("--mu", solve.mu, "Penalty growth factor");
  solve_cmd->add_option("--gamma", solve.gamma, "Softplus sharpness");
  solve_cmd->add_option("--lambda-prox", solve.lambda_prox, "gf proximal weight on lambda");
  solve_cmd->add_option("--inner-cap", solve.inner_cap, "Inner iteration cap");
  solve_cmd->add_option("--outer-cap", solve.outer_cap, "Outer iteration cap");
  solve_cmd->add_option("--sampler", solve.sampler, "binomial or bitstring");
  solve_cmd->add_option("--out", solve.out, "Output directory");
  solve_cmd->add_option("--tolerance", solve.tolerance, "Oracle tolerance for the reference value");

  OracleCmdOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Solve an instance with the classical reference solver");
  add_instance_option(oracle_cmd, oracle.instance);
  oracle_cmd->add_option("--tolerance", oracle.tolerance, "Residual and KKT tolerance");
  oracle_cmd->add_option("--max-iterations", oracle.max_iterations, "Iteration limit");

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Report Lipschitz and smoothness constants");
  add_instance_option(bounds_cmd, bounds.instance);
  bounds_cmd->add_option("--solver", bounds.solver, "ec or ic")->required();
  bounds_cmd->add_option("--depth", bounds.depth, "Ansatz depth");
  bounds_cmd->add_option("--seed", bounds.seed, "Seed for the probe parameters");
  bounds_cmd->add_option("--eta", bounds.eta, "Initial dual step");
  bounds_cmd->add_option("--mu", bounds.mu, "Penalty growth factor");
  bounds_cmd->add_option("--gamma", bounds.gamma, "Softplus sharpness");
  bounds_cmd->add_option("--penalty", bounds.penalty, "Penalty c for the ec smoothness constant");
  bounds_cmd->add_option("--outer", bounds.outer, "Rows of the epsilon_k table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(solve, shots_opt->count() > 0, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle, out);
    if (*bounds_cmd) return cmd_bounds(bounds, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParamError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace vqsdp::cli
