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

namespace {

std::vector<Observable> ec_observables(const StandardForm& form) {
  std::vector<Observable> obs;
  obs.emplace_back(form.c);
  for (const auto& a : form.constraints.constraint_ops()) obs.emplace_back(a);
  return obs;
}

void require_trace_constraint(const StandardForm& form) {
  const int m = form.constraints.num_constraints();
  if (m < 1 || !(form.constraints.op(m - 1) == HermitianOperator::identity(form.c.dim())) ||
      !(form.trace_bound() > 0.0)) {
    throw FormError("instance lacks the trace constraint A_M = I, b_M > 0");
  }
}

}  // namespace

EcModel::EcModel(const StandardForm& form, Ansatz ansatz, ShotPolicy policy)
    : form_(form), evaluator_(std::move(ansatz), policy) {
  require_trace_constraint(form_);
  if (evaluator_.ansatz().system_dim() != form_.c.dim()) throw DimensionError("ansatz does not match the instance");
  lambda_ = form_.trace_bound();
  observables_ = ec_observables(form_);
}

EcExpectations EcModel::expectations(const RealVector& theta) {
  const RealVector v = evaluator_.expect_all(theta, observables_);
  return {v[0], v.tail(v.size() - 1)};
}

RealVector EcModel::residual(const EcExpectations& e, const RealVector& z) const {
  RealVector r = lambda_ * e.phi - form_.rhs;
  if (z.size() > 0) r += z;
  return r;
}

double EcModel::aug_lagrangian(const EcExpectations& e, const RealVector& z, const RealVector& y, double c) const {
  const RealVector u = -residual(e, z);
  return lambda_ * e.c_term + y.dot(u) - 0.5 * c * u.squaredNorm();
}

double EcModel::aug_lagrangian(const RealVector& theta, const RealVector& z, const RealVector& y, double c) {
  return aug_lagrangian(expectations(theta), z, y, c);
}

RealVector EcModel::gradient_theta(const RealVector& theta, const EcExpectations& e, const RealVector& z,
                                   const RealVector& y, double c) {
  // ∇θℒ = λ ∇⟨C - Σ_m (y_m - c u_m) A_m⟩ with u = b - λ𝚽 - z held fixed
  const RealVector w = y + c * residual(e, z);
  Matrix h = form_.c.matrix();
  for (int m = 0; m < num_constraints(); ++m) h -= w[m] * form_.constraints.op(m).matrix();
  const Observable effective{HermitianOperator(std::move(h))};
  return lambda_ * evaluator_.gradient(theta, effective);
}

RealVector EcModel::gradient_slack(const EcExpectations& e, const RealVector& z, const RealVector& y,
                                   double c) const {
  return -y - c * residual(e, z);
}

double aug_lagrangian(const RealVector& theta, const RealVector& y, double c, const SdpInstance& instance,
                      const Ansatz& ansatz, const ShotPolicy& policy) {
  EcModel model(instance.standard(), ansatz, policy);
  return model.aug_lagrangian(theta, RealVector(), y, c);
}

EcResult ivqaec(const SdpInstance& instance, const SolverConfig& config) {
  config.validate();
  const StandardForm& form = instance.standard();
  if (form.kind != ConstraintKind::Equality) {
    throw FormError("iVQAEC needs an equality instance; apply slack_reduce to inequality instances");
  }
  EcModel model(form, Ansatz::hardware_efficient(qubit_count(form.c.dim()), config.depth), config.policy);
  const int r = model.ansatz().param_count();
  const int m = model.num_constraints();
  const int ns = model.slack_count();
  const double lambda = model.lambda();
  const auto norms = model.ansatz().generator_norms();

  EcResult result;
  result.lambda = lambda;
  result.theta = random_parameters(r, derive_seed(config.seed, 1));
  result.y = RealVector::Zero(m);
  result.slack = RealVector::Zero(ns);

  const double ln2sq = std::log(2.0) * std::log(2.0);
  const double residual_first = model.residual(model.expectations(result.theta), result.slack).norm();
  std::vector<bool> mask(static_cast<std::size_t>(r + ns), false);
  for (int i = 0; i < ns; ++i) mask[static_cast<std::size_t>(r + i)] = true;

  const auto start = std::chrono::steady_clock::now();
  double c = 1.0;
  for (int k = 1; k <= config.outer_max_iters; ++k) {
    const double inner_tol = 1.0 / c;  // ε'_k = 1/c_{k-1}
    c *= config.mu_growth;             // c_k = μ^k
    const RealVector& y = result.y;

    InnerProblem inner;
    inner.nonnegative = mask;
    inner.objective = [&](const RealVector& x) { return model.aug_lagrangian(x.head(r), x.tail(ns), y, c); };
    inner.gradient = [&](const RealVector& x) {
      const RealVector theta = x.head(r);
      const RealVector z = x.tail(ns);
      const EcExpectations e = model.expectations(theta);
      RealVector g(r + ns);
      g.head(r) = model.gradient_theta(theta, e, z, y, c);
      if (ns > 0) g.tail(ns) = model.gradient_slack(e, z, y, c);
      return g;
    };
    InnerOptions opts;
    opts.tolerance = inner_tol;
    opts.max_iters = config.inner_max_iters;
    opts.step = config.inner_step;
    if (config.inner_step == InnerStep::FixedFromBound) {
      double l = smoothness_ec(form, y, c, lambda, norms, r);
      if (ns > 0) l = std::max(l, c);
      opts.fixed_step = 1.0 / l;
    }
    RealVector x0(r + ns);
    x0.head(r) = result.theta;
    x0.tail(ns) = result.slack;
    InnerResult ir;
    try {
      ir = inner_maximize(inner, x0, opts);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.what(), result.trace);
    }
    result.theta = ir.x.head(r);
    result.slack = ir.x.tail(ns);

    const EcExpectations e = model.expectations(result.theta);
    const RealVector a = model.residual(e, result.slack);
    const double an = a.norm();
    double eta = config.eta;
    if (an > 0.0) {
      const double kk = static_cast<double>(k);
      const double ln = std::log(kk + 2.0);
      eta = config.eta * std::min(residual_first * ln2sq / (an * (kk + 1.0) * ln * ln), 1.0);
    }
    result.y = result.y + eta * a;

    RealVector g_theta = model.gradient_theta(result.theta, e, result.slack, result.y, c);
    double g_sq = g_theta.squaredNorm();
    if (ns > 0) {
      const RealVector gz = model.gradient_slack(e, result.slack, result.y, c);
      g_sq += projected_ascent_gradient(result.slack, gz, std::vector<bool>(ns, true)).squaredNorm();
    }
    const double criterion = std::sqrt(g_sq) + an;

    TraceRow row;
    row.outer_iter = k;
    row.inner_iters_used = ir.iterations;
    row.objective = lambda * e.c_term;
    row.grad_norm_theta = g_theta.norm();
    row.grad_norm_full = criterion;
    row.constraint_violation = an;
    row.penalty_c = c;
    row.eta_k = eta;
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    row.shots_used = model.shots_used();
    row.duals = result.y;
    row.inner_tolerance = inner_tol;
    row.inner_converged = ir.converged;
    result.trace.push_back(row);

    if (!std::isfinite(row.objective) || !std::isfinite(criterion) || !result.y.allFinite()) {
      throw DivergenceError("iVQAEC diverged at outer iteration " + std::to_string(k), result.trace);
    }
    if (criterion <= config.epsilon) {
      result.status = RunStatus::Stationary;
      break;
    }
  }
  result.penalty = c;
  result.shots_used = model.shots_used();
  return result;
}

}  // namespace vqsdp
