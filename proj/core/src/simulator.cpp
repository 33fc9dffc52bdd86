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

#include "vqsdp/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "vqsdp/errors.hpp"

namespace vqsdp {

namespace {

constexpr double kShift = std::numbers::pi / 4.0;

void apply_cnot_ladder(Vector& psi, int qubits) {
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  for (int q = 0; q + 1 < qubits; ++q) {
    const std::uint64_t control = std::uint64_t{1} << q;
    const std::uint64_t target = control << 1;
    for (std::uint64_t c = 0; c < dim; ++c) {
      if ((c & control) && !(c & target)) std::swap(psi[c], psi[c | target]);
    }
  }
}

// psi <- exp(-i angle P) psi = cos(angle) psi - i sin(angle) P psi
void apply_rotation(Vector& psi, Vector& scratch, const PauliMasks& m, double angle) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t c = 0; c < dim; ++c) scratch[c ^ m.x] = m.phase(c) * psi[c];
  const double co = std::cos(angle);
  const Complex minus_i_sin(0.0, -std::sin(angle));
  psi = co * psi + minus_i_sin * scratch;
}

// Rotates every measured qubit of `m` into the Z basis (H for X, S† then H for Y).
Vector rotate_to_z_basis(const Vector& psi, const PauliMasks& m, int system_qubits) {
  Vector out = psi;
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  const double s = std::numbers::sqrt2 / 2.0;
  for (int q = 0; q < system_qubits; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (!(m.x & bit)) continue;
    if (m.z & bit) {
      for (std::uint64_t c = 0; c < dim; ++c) {
        if (c & bit) out[c] *= Complex(0.0, -1.0);
      }
    }
    for (std::uint64_t c = 0; c < dim; ++c) {
      if (c & bit) continue;
      const Complex a = out[c];
      const Complex b = out[c | bit];
      out[c] = s * (a + b);
      out[c | bit] = s * (a - b);
    }
  }
  return out;
}

// Mean of ±1 outcomes from `shots` bitstring samples of the rotated state.
double bitstring_mean(const Vector& psi, const PauliMasks& m, int system_qubits, long long shots,
                      Rng& rng) {
  const Vector rotated = rotate_to_z_basis(psi, m, system_qubits);
  std::vector<double> weights(static_cast<std::size_t>(rotated.size()));
  for (Eigen::Index c = 0; c < rotated.size(); ++c) weights[c] = std::norm(rotated[c]);
  std::discrete_distribution<std::uint64_t> pick(weights.begin(), weights.end());
  const std::uint64_t support = m.x | m.z;
  long long sum = 0;
  for (long long s = 0; s < shots; ++s) {
    sum += (std::popcount(pick(rng) & support) & 1) ? -1 : 1;
  }
  return static_cast<double>(sum) / static_cast<double>(shots);
}

// Mean of `shots` ±1 outcomes whose expectation is `value`.
double binomial_mean(double value, long long shots, Rng& rng) {
  const double p = std::clamp(0.5 * (1.0 + value), 0.0, 1.0);
  std::binomial_distribution<long long> draw(shots, p);
  const long long plus = draw(rng);
  return static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Ansatz::Ansatz(int system_qubits, std::vector<AnsatzLayer> layers)
    : system_qubits_(system_qubits), layers_(std::move(layers)) {
  if (system_qubits < 1 || system_qubits > 6) {
    throw DimensionError("ansatz needs 1..6 system qubits");
  }
  if (layers_.empty()) throw ParamError("ansatz needs at least one parameterized layer");
  masks_.reserve(layers_.size());
  for (const auto& layer : layers_) {
    if (static_cast<int>(layer.word.size()) != total_qubits()) {
      throw DimensionError("generator word '" + layer.word + "' must have " +
                           std::to_string(total_qubits()) + " letters");
    }
    if (!std::isfinite(layer.weight) || layer.weight == 0.0) {
      throw ParamError("generator weight must be finite and nonzero");
    }
    masks_.push_back(pauli_masks(layer.word));
    if (masks_.back().is_identity()) throw ParamError("generator must not be the identity");
  }
  depth_ = 0;
}

Ansatz Ansatz::hardware_efficient(int system_qubits, int depth) {
  if (depth < 1) throw ParamError("ansatz depth must be at least 1");
  const int q_total = 2 * system_qubits;
  std::vector<AnsatzLayer> layers;
  layers.reserve(static_cast<std::size_t>(q_total) * depth);
  for (int block = 0; block < depth; ++block) {
    const char letter = (block % 2 == 0) ? 'Y' : 'Z';
    for (int q = 0; q < q_total; ++q) {
      AnsatzLayer layer;
      layer.word.assign(q_total, 'I');
      layer.word[q_total - 1 - q] = letter;
      layer.weight = 0.5;
      layer.entangler = (block > 0 && q == 0) ? Entangler::CnotLadder : Entangler::None;
      layers.push_back(std::move(layer));
    }
  }
  Ansatz out(system_qubits, std::move(layers));
  out.depth_ = depth;
  return out;
}

std::vector<double> Ansatz::generator_norms() const {
  std::vector<double> out;
  out.reserve(layers_.size());
  for (const auto& layer : layers_) out.push_back(std::abs(layer.weight));
  return out;
}

ShotPolicy ShotPolicy::sampled(long long shots, std::uint64_t seed, Sampler sampler) {
  ShotPolicy p;
  p.mode = ShotMode::Sampled;
  p.shots_per_term = shots;
  p.rng_seed = seed;
  p.sampler = sampler;
  p.validate();
  return p;
}

void ShotPolicy::validate() const {
  if (mode == ShotMode::Sampled && shots_per_term < 1) {
    throw ParamError("sampled mode needs shots_per_term >= 1");
  }
}

Vector prepare_state(const Ansatz& ansatz, const RealVector& theta) {
  if (theta.size() != ansatz.param_count()) {
    throw ParamError("expected " + std::to_string(ansatz.param_count()) + " parameters, got " +
                     std::to_string(theta.size()));
  }
  const Eigen::Index dim = Eigen::Index{1} << ansatz.total_qubits();
  Vector psi = Vector::Zero(dim);
  psi[0] = 1.0;
  Vector scratch(dim);
  const auto& layers = ansatz.layers();
  const auto& masks = ansatz.masks();
  for (std::size_t j = 0; j < layers.size(); ++j) {
    if (layers[j].entangler == Entangler::CnotLadder) apply_cnot_ladder(psi, ansatz.total_qubits());
    apply_rotation(psi, scratch, masks[j], theta[static_cast<Eigen::Index>(j)] * layers[j].weight);
  }
  return psi;
}

Matrix reduced_state(const Vector& psi, int system_qubits) {
  const Eigen::Index n = Eigen::Index{1} << system_qubits;
  if (psi.size() != n * n) throw DimensionError("state size does not match 2n qubits");
  // Column r of m is the system amplitude block for reference index r.
  Eigen::Map<const Matrix> m(psi.data(), n, n);
  return m * m.adjoint();
}

double pauli_expectation(const Vector& psi, const PauliMasks& masks) {
  if (masks.is_identity()) return psi.squaredNorm();
  Complex acc = 0.0;
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t c = 0; c < dim; ++c) acc += std::conj(psi[c ^ masks.x]) * masks.phase(c) * psi[c];
  return acc.real();
}

Observable::Observable(HermitianOperator op) : op_(std::move(op)) {
  decomposition_ = pauli_decompose(op_);
  masks_.reserve(decomposition_.terms.size());
  for (const auto& t : decomposition_.terms) {
    masks_.push_back(pauli_masks(t.word));
    if (!masks_.back().is_identity()) ++measured_terms_;
  }
}

double Observable::exact(const Vector& psi) const {
  const Eigen::Index n = op_.dim();
  if (psi.size() != n * n) throw DimensionError("observable does not match the system register");
  Eigen::Map<const Matrix> m(psi.data(), n, n);
  return (m.conjugate().cwiseProduct(op_.matrix() * m)).sum().real();
}

double Observable::sampled(const Vector& psi, const ShotPolicy& policy, Rng& rng,
                           long long* shots_used) const {
  policy.validate();
  const Eigen::Index n = op_.dim();
  if (psi.size() != n * n) throw DimensionError("observable does not match the system register");
  const int nq = decomposition_.num_qubits;
  double total = 0.0;
  for (std::size_t k = 0; k < masks_.size(); ++k) {
    const double w = decomposition_.terms[k].weight;
    if (masks_[k].is_identity()) {
      total += w;
      continue;
    }
    const double mean = policy.sampler == Sampler::Binomial
                            ? binomial_mean(pauli_expectation(psi, masks_[k]), policy.shots_per_term, rng)
                            : bitstring_mean(psi, masks_[k], nq, policy.shots_per_term, rng);
    total += w * mean;
  }
  if (shots_used) *shots_used += policy.shots_per_term * measured_terms_;
  return total;
}

double Observable::evaluate(const Vector& psi, const ShotPolicy& policy, Rng& rng,
                            long long* shots_used) const {
  return policy.is_exact() ? exact(psi) : sampled(psi, policy, rng, shots_used);
}

ProductObservable::ProductObservable(HermitianOperator op, int first_qubits, int second_qubits)
    : op_(std::move(op)), first_qubits_(first_qubits), second_qubits_(second_qubits) {
  if (op_.dim() != (1 << (first_qubits + second_qubits))) {
    throw DimensionError("product observable dimension does not match its registers");
  }
  const PauliDecomposition d = pauli_decompose(op_);
  terms_.reserve(d.terms.size());
  for (const auto& t : d.terms) {
    terms_.push_back({t.weight, pauli_masks(std::string_view(t.word).substr(0, first_qubits)),
                      pauli_masks(std::string_view(t.word).substr(first_qubits))});
  }
}

double ProductObservable::exact(const Vector& psi1, const Vector& psi2) const {
  const Matrix rho = reduced_state(psi1, first_qubits_);
  const Matrix sigma = reduced_state(psi2, second_qubits_);
  const Matrix joint = kron(rho, sigma);
  return (op_.matrix().array() * joint.transpose().array()).sum().real();
}

double ProductObservable::evaluate(const Vector& psi1, const Vector& psi2, const ShotPolicy& policy,
                                   Rng& rng, long long* shots_used) const {
  if (policy.is_exact()) return exact(psi1, psi2);
  policy.validate();
  const long long shots = policy.shots_per_term;
  double total = 0.0;
  long long measured = 0;
  for (const auto& t : terms_) {
    if (t.first.is_identity() && t.second.is_identity()) {
      total += t.weight;
      continue;
    }
    ++measured;
    double mean = 0.0;
    if (policy.sampler == Sampler::Binomial) {
      mean = binomial_mean(pauli_expectation(psi1, t.first) * pauli_expectation(psi2, t.second), shots, rng);
    } else {
      // Outcome of P1 ⊗ P2 on a product state is the product of independent ±1 outcomes.
      long long sum = 0;
      for (long long s = 0; s < shots; ++s) {
        const double a = t.first.is_identity() ? 1.0 : bitstring_mean(psi1, t.first, first_qubits_, 1, rng);
        const double b = t.second.is_identity() ? 1.0 : bitstring_mean(psi2, t.second, second_qubits_, 1, rng);
        sum += (a * b > 0) ? 1 : -1;
      }
      mean = static_cast<double>(sum) / static_cast<double>(shots);
    }
    total += t.weight * mean;
  }
  if (shots_used) *shots_used += shots * measured;
  return total;
}

RealVector shift_gradient(const Ansatz& ansatz, const RealVector& theta, const ShiftedEvaluation& f) {
  if (theta.size() != ansatz.param_count()) {
    throw ParamError("expected " + std::to_string(ansatz.param_count()) + " parameters, got " +
                     std::to_string(theta.size()));
  }
  const auto& layers = ansatz.layers();
  for (std::size_t j = 0; j < layers.size(); ++j) {
    if (std::abs(std::abs(layers[j].weight) - 0.5) > 1e-12) {
      throw UnsupportedGeneratorError("layer " + std::to_string(j) +
                                      ": parameter shift needs generator eigenvalues ±1/2");
    }
  }
  RealVector grad(theta.size());
  RealVector shifted = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    shifted[j] = theta[j] + kShift;
    const double plus = f(shifted, 2 * static_cast<std::uint64_t>(j));
    shifted[j] = theta[j] - kShift;
    const double minus = f(shifted, 2 * static_cast<std::uint64_t>(j) + 1);
    shifted[j] = theta[j];
    grad[j] = (plus - minus) / std::numbers::sqrt2;
  }
  return grad;
}

double expect(const Ansatz& ansatz, const RealVector& theta, const Observable& observable,
              const ShotPolicy& policy, Rng& rng) {
  if (observable.op().dim() != ansatz.system_dim()) {
    throw DimensionError("observable dimension " + std::to_string(observable.op().dim()) +
                         " does not match system dimension " + std::to_string(ansatz.system_dim()));
  }
  return observable.evaluate(prepare_state(ansatz, theta), policy, rng);
}

double expect(const Ansatz& ansatz, const RealVector& theta, const HermitianOperator& observable,
              const ShotPolicy& policy) {
  Rng rng(policy.rng_seed);
  return expect(ansatz, theta, Observable(observable), policy, rng);
}

RealVector grad_param_shift(const Ansatz& ansatz, const RealVector& theta, const Observable& observable,
                            const ShotPolicy& policy, std::uint64_t stream_base) {
  if (observable.op().dim() != ansatz.system_dim()) {
    throw DimensionError("observable does not match the system register");
  }
  return shift_gradient(ansatz, theta, [&](const RealVector& t, std::uint64_t stream) {
    Rng rng(derive_seed(stream_base, stream));
    return observable.evaluate(prepare_state(ansatz, t), policy, rng);
  });
}

RealVector grad_param_shift(const Ansatz& ansatz, const RealVector& theta,
                            const HermitianOperator& observable, const ShotPolicy& policy) {
  return grad_param_shift(ansatz, theta, Observable(observable), policy, policy.rng_seed);
}

double estimate_variance(const Ansatz& ansatz, const RealVector& theta, const HermitianOperator& observable,
                         const ShotPolicy& policy, int repeats) {
  if (repeats < 2) throw ParamError("estimate_variance needs at least 2 repeats");
  if (policy.is_exact()) return 0.0;
  const Observable obs(observable);
  const RealVector reference = grad_param_shift(ansatz, theta, obs, ShotPolicy::exact(), 0);
  double acc = 0.0;
  for (int rep = 0; rep < repeats; ++rep) {
    const RealVector g = grad_param_shift(ansatz, theta, obs, policy,
                                          derive_seed(policy.rng_seed, static_cast<std::uint64_t>(rep)));
    acc += (g - reference).squaredNorm();
  }
  return acc / repeats;
}

Evaluator::Evaluator(Ansatz ansatz, ShotPolicy policy) : ansatz_(std::move(ansatz)), policy_(policy) {
  policy_.validate();
}

std::uint64_t Evaluator::next_stream() { return derive_seed(policy_.rng_seed, calls_++); }

double Evaluator::expect(const RealVector& theta, const Observable& observable) {
  Rng rng(next_stream());
  return observable.evaluate(prepare_state(ansatz_, theta), policy_, rng, &shots_used_);
}

RealVector Evaluator::expect_all(const RealVector& theta, const std::vector<Observable>& observables) {
  const Vector psi = prepare_state(ansatz_, theta);
  Rng rng(next_stream());
  RealVector out(static_cast<Eigen::Index>(observables.size()));
  for (std::size_t i = 0; i < observables.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = observables[i].evaluate(psi, policy_, rng, &shots_used_);
  }
  return out;
}

RealVector Evaluator::gradient(const RealVector& theta, const Observable& observable) {
  const std::uint64_t base = next_stream();
  return shift_gradient(ansatz_, theta, [&](const RealVector& t, std::uint64_t stream) {
    Rng rng(derive_seed(base, stream));
    return observable.evaluate(prepare_state(ansatz_, t), policy_, rng, &shots_used_);
  });
}

}  // namespace vqsdp
