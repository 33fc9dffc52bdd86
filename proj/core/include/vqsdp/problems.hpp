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
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vqsdp/operators.hpp"

namespace vqsdp {

enum class ConstraintKind { Equality, Inequality };

/// sup { Tr[C X] : Φ(X) ⪯ B, X ⪰ 0 } with Φ given by its Choi matrix.
struct GeneralForm {
  HermitianOperator c;
  ChoiMatrix choi;
  HermitianOperator b_op;
};

/// sup { Tr[C X] : 𝚽(X) = b (or ≤ b), X ⪰ 0 }; the last constraint is the
/// trace constraint A_M = I, b_M = λ. A nonzero slack_count marks an
/// inequality instance rewritten as b - 𝚽(X) = z with z ≥ 0.
struct StandardForm {
  HermitianOperator c;
  DiagonalMap constraints;
  RealVector rhs;
  ConstraintKind kind = ConstraintKind::Equality;
  int slack_count = 0;

  double trace_bound() const { return rhs[rhs.size() - 1]; }
};

struct InstanceMetadata {
  std::string name;
  std::uint64_t seed = 0;
  std::string generator;
};

struct SdpInstance {
  std::variant<GeneralForm, StandardForm> form;
  InstanceMetadata metadata;
  std::optional<Matrix> feasible_witness;

  bool is_general() const { return std::holds_alternative<GeneralForm>(form); }
  const GeneralForm& general() const;
  const StandardForm& standard() const;
  /// N, the dimension of X.
  int dim() const;
  /// M: number of scalar constraints, or the output dimension for the general form.
  int num_constraints() const;

  /// Throws DimensionError/FormError/HermiticityError on a malformed instance.
  void validate() const;
};

bool operator==(const SdpInstance& a, const SdpInstance& b);

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  static Graph path(int vertices);
  static Graph cycle(int vertices);
  static Graph complete(int vertices);
  /// Erdős–Rényi G(V, p).
  static Graph random(int vertices, double edge_probability, std::uint64_t seed);

  void validate() const;
  /// Unpadded V×V Laplacian.
  RealMatrix laplacian() const;
};

/// Smallest power of two ≥ max(n, 2).
int padded_dim(int n);

/// MaxCut relaxation in equality standard form: C = L/4 padded, X_ii = 1 for
/// all i < N, plus Tr X = N.
SdpInstance maxcut_sdp(const Graph& graph);

/// The same relaxation in general form: Φ(X) = diag(X_00, …), B = I.
SdpInstance maxcut_general(const Graph& graph);

struct RandomStandardOptions {
  double trace = 1.0;
  /// C = X₀/‖X₀‖ instead of a random Hermitian objective.
  bool aligned_objective = false;
};

SdpInstance random_feasible_standard(int dim, int num_constraints, ConstraintKind kind, std::uint64_t seed,
                                     const RandomStandardOptions& options = {});

SdpInstance random_general(int dim, int out_dim, std::uint64_t seed);

/// Inequality → equality with M nonnegative slack scalars; FormError on an
/// equality instance.
SdpInstance slack_reduce(const SdpInstance& instance);

/// Largest constraint violation of X (including PSD violation of X itself).
double constraint_violation(const SdpInstance& instance, const Matrix& x);

/// b - 𝚽(X) for a standard-form instance.
RealVector slack_of(const StandardForm& form, const Matrix& x);

Matrix random_hermitian(int dim, std::uint64_t seed);

/// Serialized form uses schema version "vqsdp-instance/1".
std::string instance_to_json(const SdpInstance& instance);
SdpInstance instance_from_json(const std::string& text);
void save_instance(const SdpInstance& instance, const std::string& path);
SdpInstance load_instance(const std::string& path);

inline constexpr const char* kInstanceSchema = "vqsdp-instance/1";

}  // namespace vqsdp
