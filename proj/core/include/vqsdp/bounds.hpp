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

#include <optional>
#include <string>
#include <vector>

#include "vqsdp/problems.hpp"
#include "vqsdp/simulator.hpp"

namespace vqsdp {

/// L_h = 2 √r ‖O‖ max_i ‖H_i‖, a Lipschitz constant of θ ↦ ⟨I ⊗ O⟩_θ.
double lip_expectation(double observable_norm, const std::vector<double>& generator_norms, int r);

/// √n · max_i sup_i
double lip_multivariate(const std::vector<double>& per_coordinate_sups, int n);

/// √(Σ L_i²)
double lip_vector(const std::vector<double>& component_constants);

/// Smoothness constant of θ ↦ ℒ_c(θ, y).
double smoothness_ec(const StandardForm& form, const RealVector& y, double c, double lambda,
                     const std::vector<double>& generator_norms, int r);

/// Smoothness constant of θ ↦ ℱ_γ(θ, ȳ).
double smoothness_ic(const StandardForm& form, const RealVector& ybar, double gamma,
                     const std::vector<double>& generator_norms, int r);

/// J_{mj} = ∂(λ⟨I ⊗ A_m⟩)/∂θ_j by exact parameter shift.
RealMatrix constraint_jacobian(const StandardForm& form, const Ansatz& ansatz, const RealVector& theta,
                               double lambda);

/// Smallest singular value above `cutoff`; DegenerateJacobianError if none.
double min_nonzero_singular_value(const RealMatrix& m, double cutoff = 1e-10);

struct Theorem1Diagnostics {
  double L_f = 0.0;
  double L_A = 0.0;
  double y_max = 0.0;
  double nu = 0.0;
  double Q = 0.0;
  /// ε_k = Q / c_{k-1} for k = 1, …, outer_iters.
  std::vector<double> epsilon_k;
};

Theorem1Diagnostics theorem1_diagnostics(const StandardForm& form, const Ansatz& ansatz, const RealVector& theta1,
                                         const RealVector& y0, double eta1, const RealVector& theta_current,
                                         double mu_growth, int outer_iters);

struct BoundReport {
  std::string solver;
  int r = 0;
  std::vector<std::pair<std::string, double>> L_h;
  double L_f = 0.0;
  double L_A = 0.0;
  std::optional<double> L_c_y;
  std::optional<double> L_gamma_ybar;
  double Q = 0.0;
  double y_max = 0.0;
  double nu = 0.0;
  std::vector<double> epsilon_k;
  std::optional<double> sigma2;
};

inline constexpr const char* kBoundsSchema = "vqsdp-bounds/1";

std::string bound_report_to_json(const BoundReport& report);

}  // namespace vqsdp
