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

#include "vqsdp/operators.hpp"
#include "vqsdp/problems.hpp"

namespace vqsdp {

struct OracleOptions {
  double tolerance = 1e-7;
  long long max_iterations = 100000;
  /// Inner projected-gradient steps per multiplier update.
  int inner_iterations = 200;
};

struct OracleResult {
  double optimal_value = 0.0;
  HermitianOperator optimizer;
  /// Multipliers: y for the standard form, the entries of Y (row-major real
  /// and imaginary parts interleaved) for the general form.
  RealVector dual;
  /// Objective of a dual-feasible point built from the multipliers (standard
  /// form with a trace constraint only).
  std::optional<double> dual_bound;
  double residual = 0.0;
  double kkt_residual = 0.0;
  long long iterations = 0;
  bool converged = false;
};

OracleResult oracle_solve(const SdpInstance& instance, const OracleOptions& options = {});
OracleResult oracle_solve_general(const SdpInstance& instance, const OracleOptions& options = {});

/// Dispatches on the instance form.
OracleResult oracle_solve_any(const SdpInstance& instance, const OracleOptions& options = {});

/// The dual inf { Tr[B Y] : Φ†(Y) ⪰ C, Y ⪰ 0 } rewritten as a general-form
/// maximization with C' = -B, Φ' = -Φ†, B' = -C. Its optimum is minus the dual value.
SdpInstance general_dual_instance(const SdpInstance& instance);

inline constexpr const char* kOracleSchema = "vqsdp-oracle/1";

std::string oracle_result_to_json(const OracleResult& result);

}  // namespace vqsdp
