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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vqsdp/errors.hpp"
#include "vqsdp/operators.hpp"
#include "vqsdp/problems.hpp"
#include "vqsdp/simulator.hpp"

namespace vqsdp {

enum class InnerStep { FixedFromBound, Backtracking };
enum class RunStatus { Stationary, IterationCapped };

const char* to_string(RunStatus status);

struct TraceRow {
  int outer_iter = 0;
  int inner_iters_used = 0;
  double objective = 0.0;
  double grad_norm_theta = 0.0;
  double grad_norm_full = 0.0;
  double constraint_violation = 0.0;
  double penalty_c = 0.0;
  double eta_k = 0.0;
  double wall_time_ms = 0.0;
  long long shots_used = 0;
  RealVector duals;
  // Not part of the CSV columns; kept in the JSON form.
  double inner_tolerance = 0.0;
  bool inner_converged = false;
};

using Trace = std::vector<TraceRow>;

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, Trace trace) : Error(what), trace_(std::move(trace)) {}
  const Trace& trace() const { return trace_; }

 private:
  Trace trace_;
};

struct SolverConfig {
  double epsilon = 1e-2;
  double eta = 0.1;
  double eta1 = 0.1;
  double eta2 = 0.1;
  double mu_growth = 2.0;
  double gamma = 10.0;
  int inner_max_iters = 500;
  int outer_max_iters = 100;
  InnerStep inner_step = InnerStep::Backtracking;
  /// Proximal weight τ on λ inside the iVQAGF inner maximization.
  double lambda_prox = 2.0;
  int depth = 4;
  /// Seed for the random initial parameters.
  std::uint64_t seed = 0;
  ShotPolicy policy;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Inner maximizer

struct InnerProblem {
  std::function<double(const RealVector&)> objective;
  std::function<RealVector(const RealVector&)> gradient;
  /// Coordinates constrained to be ≥ 0 (empty: unconstrained).
  std::vector<bool> nonnegative;
};

struct InnerOptions {
  double tolerance = 1e-2;
  int max_iters = 500;
  InnerStep step = InnerStep::Backtracking;
  /// Step 1/L under FixedFromBound.
  double fixed_step = 0.0;
  double armijo_start = 0.5;
  double armijo_shrink = 0.5;
  double armijo_c1 = 1e-4;
  int max_backtracks = 40;
};

struct InnerResult {
  RealVector x;
  double objective = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Gradient with outward components at active bounds zeroed (ascent convention).
RealVector projected_ascent_gradient(const RealVector& x, const RealVector& g, const std::vector<bool>& nonnegative);

/// Projected gradient ascent; returns the best iterate seen (first one on ties).
InnerResult inner_maximize(const InnerProblem& problem, const RealVector& x0, const InnerOptions& options);

RealVector random_parameters(int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// General form

struct GfState {
  RealVector theta1;
  double lambda = 0.0;
  RealVector theta2;
  double mu = 0.0;
};

struct GfGradient {
  RealVector theta1;
  double lambda = 0.0;
  RealVector theta2;
  double mu = 0.0;

  double norm() const;
  double theta_norm() const;
  /// Norm with λ (max player) and μ (min player) clipped at their bounds.
  double projected_norm(const GfState& at) const;
};

/// The three expectations entering 𝒢.
struct GfTerms {
  double c_term = 0.0;      // ⟨I ⊗ Cᵀ⟩ on θ₁
  double b_term = 0.0;      // ⟨I ⊗ B⟩ on θ₂
  double gamma_term = 0.0;  // ⟨Γ⟩ on the product state
};

class GfModel {
 public:
  GfModel(const GeneralForm& form, Ansatz first, Ansatz second, ShotPolicy policy);

  const Ansatz& first_ansatz() const { return first_; }
  const Ansatz& second_ansatz() const { return second_; }
  long long shots_used() const { return shots_used_; }

  GfTerms terms(const RealVector& theta1, const RealVector& theta2);
  /// 𝒢 = λ⟨Cᵀ⟩ + μ⟨B⟩ - λμ⟨Γ⟩
  double objective(const GfState& state);
  GfGradient gradient(const GfState& state);
  /// Only the requested θ blocks are differentiated; the others are left empty.
  GfGradient gradient(const GfState& state, bool first_block, bool second_block);
  /// X = λ ρᵀ, the primal point encoded by (θ₁, λ).
  Matrix primal_estimate(const GfState& state) const;

 private:
  std::uint64_t next_stream();

  Ansatz first_;
  Ansatz second_;
  ShotPolicy policy_;
  Observable c_transposed_;
  Observable b_;
  ProductObservable gamma_;
  std::uint64_t calls_ = 0;
  long long shots_used_ = 0;
};

double objective_gf(const GfState& state, const GeneralForm& form, const Ansatz& first, const Ansatz& second,
                    const ShotPolicy& policy);
GfGradient grad_gf(const GfState& state, const GeneralForm& form, const Ansatz& first, const Ansatz& second,
                   const ShotPolicy& policy);

struct GfResult {
  GfState state;
  RunStatus status = RunStatus::IterationCapped;
  Trace trace;
  long long shots_used = 0;
};

GfResult ivqagf(const SdpInstance& instance, const SolverConfig& config);

// ---------------------------------------------------------------------------
// Equality-constrained standard form

/// Expectation values at one θ: ⟨C⟩ and 𝚽(θ) = (⟨A_1⟩, …, ⟨A_M⟩).
struct EcExpectations {
  double c_term = 0.0;
  RealVector phi;
};

class EcModel {
 public:
  EcModel(const StandardForm& form, Ansatz ansatz, ShotPolicy policy);

  double lambda() const { return lambda_; }
  int num_constraints() const { return form_.constraints.num_constraints(); }
  int slack_count() const { return form_.slack_count; }
  const Ansatz& ansatz() const { return evaluator_.ansatz(); }
  long long shots_used() const { return evaluator_.shots_used(); }

  EcExpectations expectations(const RealVector& theta);
  /// λ𝚽(θ) + z - b for given expectations (z empty when there are no slacks).
  RealVector residual(const EcExpectations& e, const RealVector& z) const;
  /// ℒ_c = λ⟨C⟩ + yᵀ(b - λ𝚽 - z) - (c/2)‖b - λ𝚽 - z‖²
  double aug_lagrangian(const EcExpectations& e, const RealVector& z, const RealVector& y, double c) const;
  double aug_lagrangian(const RealVector& theta, const RealVector& z, const RealVector& y, double c);
  /// ∇_θ ℒ_c with the residual weights taken from `e` (evaluated at θ).
  RealVector gradient_theta(const RealVector& theta, const EcExpectations& e, const RealVector& z,
                            const RealVector& y, double c);
  /// ∂ℒ_c/∂z = -y + c (b - λ𝚽 - z)
  RealVector gradient_slack(const EcExpectations& e, const RealVector& z, const RealVector& y, double c) const;

 private:
  StandardForm form_;
  double lambda_ = 0.0;
  Evaluator evaluator_;
  std::vector<Observable> observables_;  // C, A_1, …, A_M
};

double aug_lagrangian(const RealVector& theta, const RealVector& y, double c, const SdpInstance& instance,
                      const Ansatz& ansatz, const ShotPolicy& policy);

struct EcResult {
  RealVector theta;
  RealVector y;
  RealVector slack;
  double lambda = 0.0;
  double penalty = 0.0;
  RunStatus status = RunStatus::IterationCapped;
  Trace trace;
  long long shots_used = 0;
};

EcResult ivqaec(const SdpInstance& instance, const SolverConfig& config);

// ---------------------------------------------------------------------------
// Inequality-constrained standard form

/// (1/γ) ln(e^{γx} + 1), overflow safe.
double softplus(double x, double gamma);
double sigmoid(double t);

class IcModel {
 public:
  IcModel(const StandardForm& form, Ansatz ansatz, ShotPolicy policy, double gamma);

  const Ansatz& ansatz() const { return evaluator_.ansatz(); }
  long long shots_used() const { return evaluator_.shots_used(); }
  double gamma() const { return gamma_; }
  int num_duals() const { return form_.constraints.num_constraints() - 1; }

  /// H(ȳ) = C - Σ_{i<M} ȳ_i A_i
  HermitianOperator dual_operator(const RealVector& ybar) const;
  /// ℱ_γ = Σ b_i ȳ_i + b_M softplus(⟨H(ȳ)⟩, γ)
  double objective(const RealVector& theta, const RealVector& ybar);
  RealVector gradient_theta(const RealVector& theta, const RealVector& ybar);
  RealVector gradient_ybar(const RealVector& theta, const RealVector& ybar);

 private:
  StandardForm form_;
  double gamma_;
  Evaluator evaluator_;
  std::vector<Observable> constraint_obs_;  // A_1, …, A_{M-1}
};

double softplus_objective(const RealVector& theta, const RealVector& ybar, double gamma, const SdpInstance& instance,
                          const Ansatz& ansatz, const ShotPolicy& policy);

struct IcResult {
  RealVector theta;
  RealVector ybar;
  RunStatus status = RunStatus::IterationCapped;
  Trace trace;
  long long shots_used = 0;
};

IcResult ivqaic(const SdpInstance& instance, const SolverConfig& config);

// ---------------------------------------------------------------------------
// Trace serialization

inline constexpr const char* kTraceSchema = "vqsdp-trace/1";

std::string trace_csv_header(int num_duals);
std::string trace_to_csv(const Trace& trace, int num_duals);
std::string trace_to_json(const Trace& trace);
void write_trace_csv(const Trace& trace, int num_duals, const std::string& path);
/// Reads the columns written by trace_to_csv.
Trace trace_from_csv(const std::string& text);

}  // namespace vqsdp
