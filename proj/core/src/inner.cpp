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

#include <cmath>
#include <numbers>

#include "vqsdp/rng.hpp"
#include "vqsdp/solvers.hpp"

namespace vqsdp {

const char* to_string(RunStatus status) {
  return status == RunStatus::Stationary ? "stationary" : "iteration_capped";
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw ParamError("epsilon must be positive");
  if (!(mu_growth > 1.0)) throw ParamError("mu (penalty growth) must exceed 1");
  if (!(gamma > 0.0)) throw ParamError("gamma must be positive");
  if (!(eta > 0.0) || !(eta1 > 0.0) || !(eta2 > 0.0)) throw ParamError("step sizes must be positive");
  if (inner_max_iters < 0 || outer_max_iters < 1) throw ParamError("iteration caps must be positive");
  if (!(lambda_prox > 0.0)) throw ParamError("lambda_prox must be positive");
  if (depth < 1) throw ParamError("depth must be at least 1");
  policy.validate();
}

RealVector projected_ascent_gradient(const RealVector& x, const RealVector& g, const std::vector<bool>& nonnegative) {
  RealVector out = g;
  for (std::size_t i = 0; i < nonnegative.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (nonnegative[i] && x[k] <= 0.0 && g[k] < 0.0) out[k] = 0.0;
  }
  return out;
}

namespace {

RealVector project(RealVector x, const std::vector<bool>& nonnegative) {
  for (std::size_t i = 0; i < nonnegative.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (nonnegative[i] && x[k] < 0.0) x[k] = 0.0;
  }
  return x;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DivergenceError(std::string("non-finite ") + what + " in inner maximization", {});
}

}  // namespace

InnerResult inner_maximize(const InnerProblem& problem, const RealVector& x0, const InnerOptions& options) {
  if (!(options.tolerance > 0.0)) throw ParamError("inner tolerance must be positive");
  if (options.step == InnerStep::FixedFromBound && !(options.fixed_step > 0.0)) {
    throw ParamError("fixed inner step must be positive");
  }
  if (!problem.nonnegative.empty() && static_cast<Eigen::Index>(problem.nonnegative.size()) != x0.size()) {
    throw DimensionError("nonnegativity mask length does not match the variable");
  }

  RealVector x = project(x0, problem.nonnegative);
  double f = problem.objective(x);
  require_finite(f, "objective");

  InnerResult best{x, f, 0.0, 0, false};
  bool best_is_current = true;
  int iters = 0;
  while (true) {
    const RealVector g = problem.gradient(x);
    if (!g.allFinite()) throw DivergenceError("non-finite gradient in inner maximization", {});
    const RealVector pg = projected_ascent_gradient(x, g, problem.nonnegative);
    const double gn = pg.norm();
    if (best_is_current) best.grad_norm = gn;
    if (gn <= options.tolerance || iters >= options.max_iters) break;

    RealVector next;
    double f_next = 0.0;
    bool accepted = false;
    if (options.step == InnerStep::FixedFromBound) {
      next = project(x + options.fixed_step * g, problem.nonnegative);
      f_next = problem.objective(next);
      accepted = true;
    } else {
      double s = options.armijo_start;
      for (int b = 0; b <= options.max_backtracks; ++b, s *= options.armijo_shrink) {
        next = project(x + s * g, problem.nonnegative);
        f_next = problem.objective(next);
        require_finite(f_next, "objective");
        if (f_next >= f + options.armijo_c1 * g.dot(next - x)) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;  // stalled: no ascent step found
    require_finite(f_next, "objective");
    x = std::move(next);
    f = f_next;
    ++iters;
    best_is_current = f > best.objective;
    if (best_is_current) {
      best.x = x;
      best.objective = f;
    }
  }
  best.iterations = iters;
  best.converged = best.grad_norm <= options.tolerance;
  return best;
}

RealVector random_parameters(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  RealVector theta(count);
  for (int i = 0; i < count; ++i) theta[i] = angle(rng);
  return theta;
}

}  // namespace vqsdp
