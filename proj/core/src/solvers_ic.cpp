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

#include "vqsdp/bounds.hpp"
#include "vqsdp/rng.hpp"
#include "vqsdp/solvers.hpp"

namespace vqsdp {

double softplus(double x, double gamma) {
  const double t = gamma * x;
  return (std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)))) / gamma;
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

IcModel::IcModel(const StandardForm& form, Ansatz ansatz, ShotPolicy policy, double gamma)
    : form_(form), gamma_(gamma), evaluator_(std::move(ansatz), policy) {
  if (!(gamma > 0.0)) throw ParamError("gamma must be positive");
  const int m = form_.constraints.num_constraints();
  if (m < 1 || !(form_.constraints.op(m - 1) == HermitianOperator::identity(form_.c.dim()))) {
    throw FormError("instance lacks the trace constraint A_M = I");
  }
  if (evaluator_.ansatz().system_dim() != form_.c.dim()) throw DimensionError("ansatz does not match the instance");
  for (int i = 0; i + 1 < m; ++i) constraint_obs_.emplace_back(form_.constraints.op(i));
}

HermitianOperator IcModel::dual_operator(const RealVector& ybar) const {
  if (ybar.size() != num_duals()) throw DimensionError("ybar has the wrong length");
  Matrix h = form_.c.matrix();
  for (int i = 0; i < num_duals(); ++i) h -= ybar[i] * form_.constraints.op(i).matrix();
  return HermitianOperator(std::move(h));
}

namespace {

void require_nonnegative(const RealVector& ybar) {
  if (ybar.size() > 0 && ybar.minCoeff() < 0.0) {
    throw ProjectionError("ybar must be componentwise nonnegative");
  }
}

}  // namespace

double IcModel::objective(const RealVector& theta, const RealVector& ybar) {
  require_nonnegative(ybar);
  const double x = evaluator_.expect(theta, Observable(dual_operator(ybar)));
  return form_.rhs.head(num_duals()).dot(ybar) + form_.trace_bound() * softplus(x, gamma_);
}

RealVector IcModel::gradient_theta(const RealVector& theta, const RealVector& ybar) {
  const Observable h(dual_operator(ybar));
  const double x = evaluator_.expect(theta, h);
  return form_.trace_bound() * sigmoid(gamma_ * x) * evaluator_.gradient(theta, h);
}

RealVector IcModel::gradient_ybar(const RealVector& theta, const RealVector& ybar) {
  std::vector<Observable> obs;
  obs.reserve(constraint_obs_.size() + 1);
  obs.emplace_back(dual_operator(ybar));
  obs.insert(obs.end(), constraint_obs_.begin(), constraint_obs_.end());
  const RealVector v = evaluator_.expect_all(theta, obs);
  const double weight = form_.trace_bound() * sigmoid(gamma_ * v[0]);
  return form_.rhs.head(num_duals()) - weight * v.tail(num_duals());
}

double softplus_objective(const RealVector& theta, const RealVector& ybar, double gamma, const SdpInstance& instance,
                          const Ansatz& ansatz, const ShotPolicy& policy) {
  IcModel model(instance.standard(), ansatz, policy, gamma);
  return model.objective(theta, ybar);
}

namespace {

// Largest amount by which X = b_M ρ_θ exceeds an inequality constraint.
double primal_violation(const StandardForm& form, const Ansatz& ansatz, const RealVector& theta) {
  const Matrix x = form.trace_bound() * reduced_state(prepare_state(ansatz, theta), ansatz.system_qubits());
  const RealVector slack = form.rhs - form.constraints.apply(x);
  return std::max(0.0, -slack.minCoeff());
}

}  // namespace

IcResult ivqaic(const SdpInstance& instance, const SolverConfig& config) {
  config.validate();
  const StandardForm& form = instance.standard();
  if (form.kind != ConstraintKind::Inequality) throw FormError("iVQAIC needs an inequality instance");
  IcModel model(form, Ansatz::hardware_efficient(qubit_count(form.c.dim()), config.depth), config.policy,
                config.gamma);
  const int r = model.ansatz().param_count();
  const int md = model.num_duals();
  const auto norms = model.ansatz().generator_norms();

  IcResult result;
  result.theta = random_parameters(r, derive_seed(config.seed, 1));
  result.ybar = RealVector::Zero(md);
  const std::vector<bool> dual_mask(static_cast<std::size_t>(md), true);

  const auto start = std::chrono::steady_clock::now();
  for (int k = 1; k <= config.outer_max_iters; ++k) {
    const RealVector& ybar = result.ybar;
    InnerProblem inner;
    inner.objective = [&](const RealVector& th) { return model.objective(th, ybar); };
    inner.gradient = [&](const RealVector& th) { return model.gradient_theta(th, ybar); };
    InnerOptions opts;
    opts.tolerance = 0.5 * config.epsilon;
    opts.max_iters = config.inner_max_iters;
    opts.step = config.inner_step;
    if (config.inner_step == InnerStep::FixedFromBound) {
      opts.fixed_step = 1.0 / smoothness_ic(form, ybar, config.gamma, norms, r);
    }
    InnerResult ir;
    try {
      ir = inner_maximize(inner, result.theta, opts);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.what(), result.trace);
    }
    result.theta = ir.x;

    // Projected descent on ȳ
    const RealVector gy = model.gradient_ybar(result.theta, result.ybar);
    result.ybar = (result.ybar - config.eta * gy).cwiseMax(0.0);

    const RealVector g_theta = model.gradient_theta(result.theta, result.ybar);
    const RealVector gy_new = model.gradient_ybar(result.theta, result.ybar);
    // Descent convention: a coordinate at 0 whose gradient is positive is stationary.
    const RealVector gy_proj = -projected_ascent_gradient(result.ybar, -gy_new, dual_mask);
    const double full = std::sqrt(g_theta.squaredNorm() + gy_proj.squaredNorm());

    TraceRow row;
    row.outer_iter = k;
    row.inner_iters_used = ir.iterations;
    row.objective = model.objective(result.theta, result.ybar);
    row.grad_norm_theta = g_theta.norm();
    row.grad_norm_full = full;
    row.constraint_violation = primal_violation(form, model.ansatz(), result.theta);
    row.penalty_c = config.gamma;
    row.eta_k = config.eta;
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    row.shots_used = model.shots_used();
    row.duals = result.ybar;
    row.inner_tolerance = opts.tolerance;
    row.inner_converged = ir.converged;
    result.trace.push_back(row);

    if (!std::isfinite(row.objective) || !std::isfinite(full)) {
      throw DivergenceError("iVQAIC diverged at outer iteration " + std::to_string(k), result.trace);
    }
    if (full <= config.epsilon) {
      result.status = RunStatus::Stationary;
      break;
    }
  }
  result.shots_used = model.shots_used();
  return result;
}

}  // namespace vqsdp
