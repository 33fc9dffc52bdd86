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

#include "vqsdp/operators.hpp"
#include "vqsdp/pauli.hpp"
#include "vqsdp/rng.hpp"

namespace vqsdp {

enum class Entangler { None, CnotLadder };

/// U_j(θ_j) = exp(-i θ_j w P) W_j. The entangler W_j acts first.
struct AnsatzLayer {
  std::string word;  // over all 2n qubits, leftmost letter on the top reference qubit
  double weight = 0.5;
  Entangler entangler = Entangler::None;
};

/// Parameterized circuit on n reference + n system qubits. System qubits are
/// the low bits of the basis index.
class Ansatz {
 public:
  Ansatz() = default;
  Ansatz(int system_qubits, std::vector<AnsatzLayer> layers);

  /// Alternating Y/Z rotation blocks on every qubit, CNOT ladder between
  /// blocks; r = 2n * depth.
  static Ansatz hardware_efficient(int system_qubits, int depth);

  int system_qubits() const { return system_qubits_; }
  int total_qubits() const { return 2 * system_qubits_; }
  int system_dim() const { return 1 << system_qubits_; }
  int param_count() const { return static_cast<int>(layers_.size()); }
  const std::vector<AnsatzLayer>& layers() const { return layers_; }
  const std::vector<PauliMasks>& masks() const { return masks_; }
  /// ‖H_j‖ = |w_j| for each layer.
  std::vector<double> generator_norms() const;
  int depth() const { return depth_; }

 private:
  int system_qubits_ = 0;
  int depth_ = 0;
  std::vector<AnsatzLayer> layers_;
  std::vector<PauliMasks> masks_;
};

enum class ShotMode { Exact, Sampled };

/// Binomial draws per Pauli term, or explicit bitstring sampling in the
/// rotated basis. Both produce the same estimator distribution.
enum class Sampler { Binomial, Bitstring };

struct ShotPolicy {
  ShotMode mode = ShotMode::Exact;
  long long shots_per_term = 0;
  std::uint64_t rng_seed = 0;
  Sampler sampler = Sampler::Binomial;

  static ShotPolicy exact() { return {}; }
  static ShotPolicy sampled(long long shots, std::uint64_t seed, Sampler sampler = Sampler::Binomial);

  bool is_exact() const { return mode == ShotMode::Exact; }
  void validate() const;
};

/// |ψ(θ)> = U_r(θ_r)…U_1(θ_1)|0…0>.
Vector prepare_state(const Ansatz& ansatz, const RealVector& theta);

/// ρ_S = Tr_R |ψ><ψ| for a state on n reference + n system qubits.
Matrix reduced_state(const Vector& psi, int system_qubits);

/// ⟨ψ| I_R ⊗ P |ψ⟩ with P acting on the low (system) qubits.
double pauli_expectation(const Vector& psi, const PauliMasks& masks);

/// System observable together with its cached Pauli decomposition.
class Observable {
 public:
  Observable() = default;
  explicit Observable(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  const PauliDecomposition& decomposition() const { return decomposition_; }
  int measured_terms() const { return measured_terms_; }

  double exact(const Vector& psi) const;
  /// Unbiased shot estimate; adds the shots spent to *shots_used when given.
  double sampled(const Vector& psi, const ShotPolicy& policy, Rng& rng,
                 long long* shots_used = nullptr) const;
  double evaluate(const Vector& psi, const ShotPolicy& policy, Rng& rng,
                  long long* shots_used = nullptr) const;

 private:
  HermitianOperator op_;
  PauliDecomposition decomposition_;
  std::vector<PauliMasks> masks_;
  int measured_terms_ = 0;
};

/// Operator on S1 ⊗ S2 evaluated on the product of two purified states,
/// e.g. Tr[Γ (ρ ⊗ σ)]. The first factor is the more significant one.
class ProductObservable {
 public:
  ProductObservable() = default;
  ProductObservable(HermitianOperator op, int first_qubits, int second_qubits);

  const HermitianOperator& op() const { return op_; }
  int first_qubits() const { return first_qubits_; }
  int second_qubits() const { return second_qubits_; }

  double exact(const Vector& psi1, const Vector& psi2) const;
  double evaluate(const Vector& psi1, const Vector& psi2, const ShotPolicy& policy, Rng& rng,
                  long long* shots_used = nullptr) const;

 private:
  struct Term {
    double weight;
    PauliMasks first;
    PauliMasks second;
  };
  HermitianOperator op_;
  int first_qubits_ = 0;
  int second_qubits_ = 0;
  std::vector<Term> terms_;
};

/// f(θ, stream) evaluated at shifted parameters; stream = 2j + (0 for +, 1 for -).
using ShiftedEvaluation = std::function<double(const RealVector& theta, std::uint64_t stream)>;

/// g_j = (f(θ + π/4 e_j) - f(θ - π/4 e_j)) / √2. Requires |w_j| = 1/2.
RealVector shift_gradient(const Ansatz& ansatz, const RealVector& theta, const ShiftedEvaluation& f);

double expect(const Ansatz& ansatz, const RealVector& theta, const Observable& observable,
              const ShotPolicy& policy, Rng& rng);
double expect(const Ansatz& ansatz, const RealVector& theta, const HermitianOperator& observable,
              const ShotPolicy& policy);

/// Parameter-shift gradient; shifted evaluation j± draws from stream 2j(+1)
/// of `stream_base`.
RealVector grad_param_shift(const Ansatz& ansatz, const RealVector& theta, const Observable& observable,
                            const ShotPolicy& policy, std::uint64_t stream_base);
RealVector grad_param_shift(const Ansatz& ansatz, const RealVector& theta,
                            const HermitianOperator& observable, const ShotPolicy& policy);

/// Mean of ‖g_sampled - g_exact‖² over `repeats` independent gradient draws.
double estimate_variance(const Ansatz& ansatz, const RealVector& theta, const HermitianOperator& observable,
                         const ShotPolicy& policy, int repeats);

/// Per-run evaluation context: owns the policy, hands out fresh RNG streams
/// and counts shots.
class Evaluator {
 public:
  Evaluator(Ansatz ansatz, ShotPolicy policy);

  const Ansatz& ansatz() const { return ansatz_; }
  const ShotPolicy& policy() const { return policy_; }
  long long shots_used() const { return shots_used_; }

  Vector state(const RealVector& theta) const { return prepare_state(ansatz_, theta); }
  double expect(const RealVector& theta, const Observable& observable);
  /// Expectations of several observables on one prepared state.
  RealVector expect_all(const RealVector& theta, const std::vector<Observable>& observables);
  RealVector gradient(const RealVector& theta, const Observable& observable);
  /// Fresh stream seed for callers that run their own sampling.
  std::uint64_t next_stream();
  void add_shots(long long shots) { shots_used_ += shots; }

 private:
  Ansatz ansatz_;
  ShotPolicy policy_;
  std::uint64_t calls_ = 0;
  long long shots_used_ = 0;
};

}  // namespace vqsdp
