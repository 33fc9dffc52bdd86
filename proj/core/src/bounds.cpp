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

#include "vqsdp/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "vqsdp/errors.hpp"

namespace vqsdp {

namespace {

double max_of(const std::vector<double>& v) {
  if (v.empty()) throw ParamError("bound needs at least one generator norm");
  return *std::max_element(v.begin(), v.end());
}

// Σ_i (per-coordinate factor · ‖H_i‖)² collapsed through lip_vector.
double aggregate(double factor, const std::vector<double>& generator_norms) {
  std::vector<double> per;
  per.reserve(generator_norms.size());
  for (double h : generator_norms) per.push_back(factor * h);
  return lip_vector(per);
}

}  // namespace

double lip_expectation(double observable_norm, const std::vector<double>& generator_norms, int r) {
  return 2.0 * std::sqrt(static_cast<double>(r)) * observable_norm * max_of(generator_norms);
}

double lip_multivariate(const std::vector<double>& per_coordinate_sups, int n) {
  if (per_coordinate_sups.empty()) return 0.0;
  return std::sqrt(static_cast<double>(n)) * max_of(per_coordinate_sups);
}

double lip_vector(const std::vector<double>& component_constants) {
  double acc = 0.0;
  for (double l : component_constants) acc += l * l;
  return std::sqrt(acc);
}

double smoothness_ec(const StandardForm& form, const RealVector& y, double c, double lambda,
                     const std::vector<double>& generator_norms, int r) {
  const int m = form.constraints.num_constraints();
  if (y.size() != m) throw DimensionError("smoothness_ec: y has the wrong length");
  if (!(c > 0.0)) throw ParamError("smoothness_ec: c must be positive");
  double inner = form.c.spectral_norm();
  for (int i = 0; i < m; ++i) {
    const double a = form.constraints.op(i).spectral_norm();
    inner += (std::abs(y[i]) + c * std::abs(form.rhs[i])) * a + 2.0 * c * lambda * a * a;
  }
  const double factor = 4.0 * lambda * std::sqrt(static_cast<double>(r)) * inner * max_of(generator_norms);
  return aggregate(factor, generator_norms);
}

double smoothness_ic(const StandardForm& form, const RealVector& ybar, double gamma,
                     const std::vector<double>& generator_norms, int r) {
  const int m = form.constraints.num_constraints();
  if (ybar.size() != m - 1) throw DimensionError("smoothness_ic: ybar has the wrong length");
  if (!(gamma > 0.0)) throw ParamError("smoothness_ic: gamma must be positive");
  Matrix h = form.c.matrix();
  for (int i = 0; i + 1 < m; ++i) h -= ybar[i] * form.constraints.op(i).matrix();
  const double hn = HermitianOperator(std::move(h)).spectral_norm();
  const double factor = 4.0 * form.trace_bound() * std::sqrt(static_cast<double>(r)) * (hn + 4.0 * gamma * hn * hn) *
                        max_of(generator_norms);
  return aggregate(factor, generator_norms);
}

RealMatrix constraint_jacobian(const StandardForm& form, const Ansatz& ansatz, const RealVector& theta,
                               double lambda) {
  const int m = form.constraints.num_constraints();
  RealMatrix j(m, ansatz.param_count());
  for (int i = 0; i < m; ++i) {
    const Observable obs(form.constraints.op(i));
    j.row(i) = lambda * grad_param_shift(ansatz, theta, obs, ShotPolicy::exact(), 0).transpose();
  }
  return j;
}

double min_nonzero_singular_value(const RealMatrix& m, double cutoff) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cutoff) best = std::min(best, s[i]);
  }
  if (!std::isfinite(best)) throw DegenerateJacobianError("Jacobian has no singular value above the cutoff");
  return best;
}

Theorem1Diagnostics theorem1_diagnostics(const StandardForm& form, const Ansatz& ansatz, const RealVector& theta1,
                                         const RealVector& y0, double eta1, const RealVector& theta_current,
                                         double mu_growth, int outer_iters) {
  const int m = form.constraints.num_constraints();
  if (y0.size() != m) throw DimensionError("theorem1_diagnostics: y0 has the wrong length");
  const double lambda = form.trace_bound();
  const auto norms = ansatz.generator_norms();
  const int r = ansatz.param_count();

  Theorem1Diagnostics d;
  d.L_f = lip_expectation(form.c.spectral_norm(), norms, r);
  std::vector<double> per_constraint;
  for (int i = 0; i < m; ++i) {
    per_constraint.push_back(lip_expectation(lambda * form.constraints.op(i).spectral_norm(), norms, r));
  }
  d.L_A = lip_vector(per_constraint);

  // A(θ¹) = λ𝚽(θ¹) - b
  const Vector psi = prepare_state(ansatz, theta1);
  RealVector a(m);
  for (int i = 0; i < m; ++i) a[i] = lambda * Observable(form.constraints.op(i)).exact(psi) - form.rhs[i];
  const double ln2 = std::log(2.0);
  d.y_max = y0.norm() + eta1 * a.norm() * ln2 * ln2;

  d.nu = min_nonzero_singular_value(constraint_jacobian(form, ansatz, theta_current, lambda).transpose());
  d.Q = 2.0 * (d.L_f + d.y_max * d.L_A) * (1.0 + eta1 * d.L_A) / d.nu + 1.0;
  double c_prev = 1.0;
  for (int k = 1; k <= outer_iters; ++k) {
    d.epsilon_k.push_back(d.Q / c_prev);
    c_prev *= mu_growth;
  }
  return d;
}

std::string bound_report_to_json(const BoundReport& report) {
  nlohmann::ordered_json j;
  j["version"] = kBoundsSchema;
  j["solver"] = report.solver;
  j["r"] = report.r;
  nlohmann::ordered_json lh = nlohmann::ordered_json::object();
  for (const auto& [name, value] : report.L_h) lh[name] = value;
  j["L_h"] = lh;
  j["L_f"] = report.L_f;
  j["L_A"] = report.L_A;
  j["L_c_y"] = report.L_c_y ? nlohmann::ordered_json(*report.L_c_y) : nlohmann::ordered_json(nullptr);
  j["L_gamma_ybar"] =
      report.L_gamma_ybar ? nlohmann::ordered_json(*report.L_gamma_ybar) : nlohmann::ordered_json(nullptr);
  j["Q"] = report.Q;
  j["y_max"] = report.y_max;
  j["nu"] = report.nu;
  j["epsilon_k"] = report.epsilon_k;
  j["sigma2"] = report.sigma2 ? nlohmann::ordered_json(*report.sigma2) : nlohmann::ordered_json(nullptr);
  return j.dump(2);
}

}  // namespace vqsdp
