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

#include <chrono>
#include <cmath>

#include "vqsdp/rng.hpp"
#include "vqsdp/solvers.hpp"

namespace vqsdp {

double GfGradient::norm() const {
  return std::sqrt(theta1.squaredNorm() + theta2.squaredNorm() + lambda * lambda + mu * mu);
}

double GfGradient::theta_norm() const { return std::sqrt(theta1.squaredNorm() + theta2.squaredNorm()); }

double GfGradient::projected_norm(const GfState& at) const {
  const double gl = (at.lambda <= 0.0 && lambda < 0.0) ? 0.0 : lambda;
  const double gm = (at.mu <= 0.0 && mu > 0.0) ? 0.0 : mu;
  return std::sqrt(theta1.squaredNorm() + theta2.squaredNorm() + gl * gl + gm * gm);
}

GfModel::GfModel(const GeneralForm& form, Ansatz first, Ansatz second, ShotPolicy policy)
    : first_(std::move(first)),
      second_(std::move(second)),
      policy_(policy),
      c_transposed_(form.c.transpose()),
      b_(form.b_op),
      gamma_(form.choi.as_operator(), first_.system_qubits(), second_.system_qubits()) {
  policy_.validate();
  if (first_.system_dim() != form.c.dim()) throw DimensionError("first ansatz does not match C");
  if (second_.system_dim() != form.b_op.dim()) throw DimensionError("second ansatz does not match B");
}

std::uint64_t GfModel::next_stream() { return derive_seed(policy_.rng_seed, calls_++); }

GfTerms GfModel::terms(const RealVector& theta1, const RealVector& theta2) {
  const Vector psi1 = prepare_state(first_, theta1);
  const Vector psi2 = prepare_state(second_, theta2);
  Rng rng(next_stream());
  GfTerms t;
  t.c_term = c_transposed_.evaluate(psi1, policy_, rng, &shots_used_);
  t.b_term = b_.evaluate(psi2, policy_, rng, &shots_used_);
  t.gamma_term = gamma_.evaluate(psi1, psi2, policy_, rng, &shots_used_);
  return t;
}

double GfModel::objective(const GfState& s) {
  const GfTerms t = terms(s.theta1, s.theta2);
  return s.lambda * t.c_term + s.mu * t.b_term - s.lambda * s.mu * t.gamma_term;
}

GfGradient GfModel::gradient(const GfState& s) { return gradient(s, true, true); }

GfGradient GfModel::gradient(const GfState& s, bool first_block, bool second_block) {
  GfGradient g;
  const GfTerms t = terms(s.theta1, s.theta2);
  g.lambda = t.c_term - s.mu * t.gamma_term;
  g.mu = t.b_term - s.lambda * t.gamma_term;

  if (first_block) {
    g.theta1 = RealVector::Zero(s.theta1.size());
    if (s.lambda != 0.0) {
      const Vector psi2 = prepare_state(second_, s.theta2);
      const std::uint64_t base = next_stream();
      // ∇θ₁ 𝒢 = λ ∇⟨Cᵀ⟩ - λμ ∇θ₁⟨Γ⟩
      g.theta1 = s.lambda * shift_gradient(first_, s.theta1, [&](const RealVector& th, std::uint64_t stream) {
                   Rng rng(derive_seed(base, stream));
                   const Vector psi1 = prepare_state(first_, th);
                   double v = c_transposed_.evaluate(psi1, policy_, rng, &shots_used_);
                   if (s.mu != 0.0) v -= s.mu * gamma_.evaluate(psi1, psi2, policy_, rng, &shots_used_);
                   return v;
                 });
    }
  }
  if (second_block) {
    g.theta2 = RealVector::Zero(s.theta2.size());
    if (s.mu != 0.0) {
      const Vector psi1 = prepare_state(first_, s.theta1);
      const std::uint64_t base = next_stream();
      // ∇θ₂ 𝒢 = μ ∇⟨B⟩ - λμ ∇θ₂⟨Γ⟩
      g.theta2 = s.mu * shift_gradient(second_, s.theta2, [&](const RealVector& th, std::uint64_t stream) {
                   Rng rng(derive_seed(base, stream));
                   const Vector psi2 = prepare_state(second_, th);
                   double v = b_.evaluate(psi2, policy_, rng, &shots_used_);
                   if (s.lambda != 0.0) v -= s.lambda * gamma_.evaluate(psi1, psi2, policy_, rng, &shots_used_);
                   return v;
                 });
    }
  }
  return g;
}

Matrix GfModel::primal_estimate(const GfState& s) const {
  const Matrix rho = reduced_state(prepare_state(first_, s.theta1), first_.system_qubits());
  return s.lambda * rho.transpose();
}

double objective_gf(const GfState& state, const GeneralForm& form, const Ansatz& first, const Ansatz& second,
                    const ShotPolicy& policy) {
  GfModel model(form, first, second, policy);
  return model.objective(state);
}

GfGradient grad_gf(const GfState& state, const GeneralForm& form, const Ansatz& first, const Ansatz& second,
                   const ShotPolicy& policy) {
  GfModel model(form, first, second, policy);
  return model.gradient(state);
}

namespace {

double general_violation(const GeneralForm& form, const Matrix& x) {
  const Matrix gap = apply_via_choi(form.choi, x) - form.b_op.matrix();
  return std::max(0.0, max_eigenvalue(HermitianOperator(0.5 * (gap + gap.adjoint()))));
}

}  // namespace

GfResult ivqagf(const SdpInstance& instance, const SolverConfig& config) {
  config.validate();
  if (config.inner_step != InnerStep::Backtracking) {
    throw ParamError("iVQAGF supports only the backtracking inner step");
  }
  const GeneralForm& form = instance.general();
  const int n1 = qubit_count(form.c.dim());
  const int n2 = qubit_count(form.b_op.dim());
  GfModel model(form, Ansatz::hardware_efficient(n1, config.depth), Ansatz::hardware_efficient(n2, config.depth),
                config.policy);
  const int r1 = model.first_ansatz().param_count();
  const int r2 = model.second_ansatz().param_count();

  GfResult result;
  GfState& s = result.state;
  s.theta1 = random_parameters(r1, derive_seed(config.seed, 1));
  s.theta2 = random_parameters(r2, derive_seed(config.seed, 2));
  s.lambda = 1.0;
  s.mu = 0.0;

  const double tau = config.lambda_prox;
  InnerOptions inner_opts;
  inner_opts.tolerance = config.epsilon;
  inner_opts.max_iters = config.inner_max_iters;

  RealVector prev_theta2;
  double prev_mu = 0.0;
  bool have_prev = false;
  const auto start = std::chrono::steady_clock::now();

  for (int k = 1; k <= config.outer_max_iters; ++k) {
    // (i) inexact max over (θ₁, λ) with a proximal term on λ
    const double lambda_k = s.lambda;
    InnerProblem inner;
    inner.nonnegative.assign(static_cast<std::size_t>(r1) + 1, false);
    inner.nonnegative.back() = true;
    inner.objective = [&](const RealVector& x) {
      const GfState trial{x.head(r1), x[r1], s.theta2, s.mu};
      const double d = x[r1] - lambda_k;
      return model.objective(trial) - d * d / (2.0 * tau);
    };
    inner.gradient = [&](const RealVector& x) {
      const GfState trial{x.head(r1), x[r1], s.theta2, s.mu};
      const GfGradient g = model.gradient(trial, true, false);
      RealVector out(r1 + 1);
      out.head(r1) = g.theta1;
      out[r1] = g.lambda - (x[r1] - lambda_k) / tau;
      return out;
    };
    RealVector x0(r1 + 1);
    x0.head(r1) = s.theta1;
    x0[r1] = s.lambda;
    InnerResult ir;
    try {
      ir = inner_maximize(inner, x0, inner_opts);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.what(), result.trace);
    }
    s.theta1 = ir.x.head(r1);
    s.lambda = ir.x[r1];

    // (ii), (iii) optimistic descent steps for μ and θ₂
    const GfGradient g = model.gradient(s, false, true);
    if (!have_prev) {
      prev_theta2 = g.theta2;
      prev_mu = g.mu;
      have_prev = true;
    }
    s.mu = std::max(0.0, s.mu - config.eta1 * (2.0 * g.mu - prev_mu));
    s.theta2 = s.theta2 - config.eta2 * (2.0 * g.theta2 - prev_theta2);
    prev_theta2 = g.theta2;
    prev_mu = g.mu;

    const GfGradient full = model.gradient(s);
    TraceRow row;
    row.outer_iter = k;
    row.inner_iters_used = ir.iterations;
    row.objective = model.objective(s);
    row.grad_norm_theta = full.theta_norm();
    row.grad_norm_full = full.projected_norm(s);
    row.constraint_violation = general_violation(form, model.primal_estimate(s));
    row.penalty_c = 0.0;
    row.eta_k = config.eta1;
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    row.shots_used = model.shots_used();
    row.duals = RealVector::Constant(1, s.mu);
    row.inner_tolerance = config.epsilon;
    row.inner_converged = ir.converged;
    result.trace.push_back(row);

    if (!std::isfinite(row.objective) || !std::isfinite(row.grad_norm_full) || !std::isfinite(s.lambda) ||
        !std::isfinite(s.mu)) {
      throw DivergenceError("iVQAGF diverged at outer iteration " + std::to_string(k), result.trace);
    }
    if (row.grad_norm_full < config.epsilon) {
      result.status = RunStatus::Stationary;
      break;
    }
  }
  result.shots_used = model.shots_used();
  return result;
}

}  // namespace vqsdp
