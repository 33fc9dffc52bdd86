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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "vqsdp/errors.hpp"
#include "vqsdp/rng.hpp"
#include "vqsdp/simulator.hpp"

namespace vqsdp {
namespace {

using testing::random_angles;
using testing::random_hermitian_matrix;

Ansatz single_y() { return Ansatz(1, {AnsatzLayer{"IY", 0.5, Entangler::None}}); }

HermitianOperator pauli_z() {
  const std::vector<double> z{1.0, -1.0};
  return HermitianOperator::diagonal(z);
}

RealVector one(double v) {
  RealVector t(1);
  t << v;
  return t;
}

TEST(Ansatz, Construction) {
  EXPECT_THROW(Ansatz(1, {}), ParamError);
  EXPECT_THROW(Ansatz(1, {AnsatzLayer{"II", 0.5, Entangler::None}}), ParamError);
  EXPECT_THROW(Ansatz(1, {AnsatzLayer{"IYZ", 0.5, Entangler::None}}), DimensionError);
  Ansatz a = Ansatz::hardware_efficient(2, 3);
  EXPECT_EQ(a.param_count(), 2 * 2 * 3);
  EXPECT_EQ(a.total_qubits(), 4);
  EXPECT_EQ(a.system_dim(), 4);
  for (double n : a.generator_norms()) EXPECT_DOUBLE_EQ(n, 0.5);
}

TEST(PrepareState, SingleRotation) {
  Vector psi = prepare_state(single_y(), one(M_PI));
  EXPECT_NEAR(std::abs(psi[1]), 1.0, 1e-12);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  EXPECT_THROW(prepare_state(single_y(), RealVector::Zero(2)), ParamError);
}

TEST(PrepareState, Unitarity) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    Ansatz a = Ansatz::hardware_efficient(1 + t % 3, 1 + t % 4);
    EXPECT_NEAR(prepare_state(a, random_angles(a.param_count(), rng)).norm(), 1.0, 1e-12);
  }
}

TEST(ReducedState, IsDensityMatrix) {
  std::mt19937_64 rng(2);
  Ansatz a = Ansatz::hardware_efficient(2, 2);
  Matrix rho = reduced_state(prepare_state(a, random_angles(a.param_count(), rng)), 2);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_GE(min_eigenvalue(HermitianOperator(0.5 * (rho + rho.adjoint()))), -1e-12);
}

TEST(Expect, AnalyticCosine) {
  EXPECT_NEAR(expect(single_y(), one(M_PI / 3), pauli_z(), ShotPolicy::exact()), 0.5, 1e-12);
  EXPECT_NEAR(expect(single_y(), one(0.3), HermitianOperator::identity(2), ShotPolicy::exact()), 1.0, 1e-12);
  EXPECT_NEAR(expect(single_y(), one(0.3), HermitianOperator::identity(2), ShotPolicy::sampled(7, 1)), 1.0, 0.0);
  EXPECT_THROW(expect(single_y(), one(0.3), HermitianOperator::identity(4), ShotPolicy::exact()), DimensionError);
}

TEST(Expect, WithinSpectrum) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    Ansatz a = Ansatz::hardware_efficient(2, 2);
    HermitianOperator h(random_hermitian_matrix(4, rng));
    const double v = expect(a, random_angles(a.param_count(), rng), h, ShotPolicy::exact());
    EXPECT_GE(v, min_eigenvalue(h) - 1e-10);
    EXPECT_LE(v, max_eigenvalue(h) + 1e-10);
  }
}

TEST(Expect, ExactMatchesDensityMatrix) {
  std::mt19937_64 rng(4);
  Ansatz a = Ansatz::hardware_efficient(2, 3);
  RealVector theta = random_angles(a.param_count(), rng);
  HermitianOperator h(random_hermitian_matrix(4, rng));
  Matrix rho = reduced_state(prepare_state(a, theta), 2);
  EXPECT_NEAR(expect(a, theta, h, ShotPolicy::exact()), h.trace_product(rho), 1e-12);
}

TEST(Expect, SampledWithinFiveStandardErrors) {
  std::mt19937_64 gen(5);
  Ansatz a = Ansatz::hardware_efficient(2, 2);
  RealVector theta = random_angles(a.param_count(), gen);
  Observable obs{HermitianOperator(random_hermitian_matrix(4, gen))};
  const Vector psi = prepare_state(a, theta);
  const long long shots = 10000;
  Rng rng(9);
  const double sampled = obs.sampled(psi, ShotPolicy::sampled(shots, 9), rng);
  // Per-term variance (1 - ⟨P⟩²)/shots, summed with squared weights.
  double var = 0.0;
  for (const auto& t : obs.decomposition().terms) {
    if (t.word.find_first_not_of('I') == std::string::npos) continue;
    const double p = pauli_expectation(psi, pauli_masks(std::string(2, 'I') + t.word));
    var += t.weight * t.weight * (1.0 - p * p) / static_cast<double>(shots);
  }
  EXPECT_LE(std::abs(sampled - obs.exact(psi)), 5.0 * std::sqrt(var));
}

TEST(Expect, BitstringSamplerIsUnbiased) {
  std::mt19937_64 gen(6);
  Ansatz a = Ansatz::hardware_efficient(1, 2);
  RealVector theta = random_angles(a.param_count(), gen);
  Observable obs{HermitianOperator(random_hermitian_matrix(2, gen))};
  const Vector psi = prepare_state(a, theta);
  ShotPolicy policy = ShotPolicy::sampled(50, 3, Sampler::Bitstring);
  Rng rng(3);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 500;
  for (int i = 0; i < draws; ++i) {
    const double v = obs.sampled(psi, policy, rng);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / draws;
  const double stderr_ = std::sqrt((sum_sq / draws - mean * mean) / draws);
  EXPECT_LE(std::abs(mean - obs.exact(psi)), 4.0 * stderr_);
}

TEST(Expect, SampledIsReproducible) {
  Ansatz a = Ansatz::hardware_efficient(1, 1);
  RealVector theta = RealVector::Constant(a.param_count(), 0.4);
  const double x = expect(a, theta, pauli_z(), ShotPolicy::sampled(20, 42));
  const double y = expect(a, theta, pauli_z(), ShotPolicy::sampled(20, 42));
  EXPECT_EQ(x, y);
}

TEST(ShotPolicy, Validation) {
  EXPECT_THROW(ShotPolicy::sampled(0, 1).validate(), ParamError);
  EXPECT_NO_THROW(ShotPolicy::exact().validate());
}

TEST(ParamShift, AnalyticSingleQubit) {
  Observable z{pauli_z()};
  EXPECT_NEAR(grad_param_shift(single_y(), one(M_PI / 2), z, ShotPolicy::exact(), 0)[0], -1.0, 1e-12);
  EXPECT_NEAR(grad_param_shift(single_y(), one(0.0), z, ShotPolicy::exact(), 0)[0], 0.0, 1e-12);
}

TEST(ParamShift, RejectsOtherSpectra) {
  Ansatz a(1, {AnsatzLayer{"IY", 1.0, Entangler::None}});
  EXPECT_THROW(grad_param_shift(a, one(0.1), pauli_z(), ShotPolicy::exact()), UnsupportedGeneratorError);
}

TEST(ParamShift, NegativeWeightGenerator) {
  Ansatz a(1, {AnsatzLayer{"IY", -0.5, Entangler::None}, AnsatzLayer{"IZ", 0.5, Entangler::None},
               AnsatzLayer{"XY", -0.5, Entangler::CnotLadder}});
  std::mt19937_64 rng(7);
  Observable obs{HermitianOperator(random_hermitian_matrix(2, rng))};
  RealVector theta = random_angles(3, rng);
  RealVector g = grad_param_shift(a, theta, obs, ShotPolicy::exact(), 0);
  for (int j = 0; j < 3; ++j) {
    RealVector tp = theta, tm = theta;
    tp[j] += 1e-5;
    tm[j] -= 1e-5;
    const double fd = (obs.exact(prepare_state(a, tp)) - obs.exact(prepare_state(a, tm))) / 2e-5;
    EXPECT_NEAR(g[j], fd, 1e-6);
  }
}

TEST(ParamShift, GradientNormBound) {
  std::mt19937_64 rng(8);
  Ansatz a = Ansatz::hardware_efficient(2, 2);
  HermitianOperator o(random_hermitian_matrix(4, rng));
  Observable obs(o);
  const double bound = o.spectral_norm();  // 2‖O‖‖H_i‖ with ‖H_i‖ = 1/2
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    worst = std::max(worst,
                     grad_param_shift(a, random_angles(a.param_count(), rng), obs, ShotPolicy::exact(), 0)
                         .cwiseAbs()
                         .maxCoeff());
  }
  EXPECT_LE(worst, bound + 1e-10);
}

TEST(EstimateVariance, Examples) {
  Ansatz a = Ansatz::hardware_efficient(1, 2);
  RealVector theta = RealVector::Constant(a.param_count(), 0.7);
  EXPECT_EQ(estimate_variance(a, theta, pauli_z(), ShotPolicy::exact(), 10), 0.0);
  EXPECT_NEAR(estimate_variance(a, theta, HermitianOperator::identity(2), ShotPolicy::sampled(10, 1), 10), 0.0, 1e-24);
  EXPECT_THROW(estimate_variance(a, theta, pauli_z(), ShotPolicy::sampled(10, 1), 1), ParamError);
}

TEST(EstimateVariance, QuartersUnderFourTimesShots) {
  Ansatz a = Ansatz::hardware_efficient(1, 2);
  RealVector theta = RealVector::Constant(a.param_count(), 0.7);
  const double low = estimate_variance(a, theta, pauli_z(), ShotPolicy::sampled(25, 1), 200);
  const double high = estimate_variance(a, theta, pauli_z(), ShotPolicy::sampled(100, 2), 200);
  EXPECT_GE(high / low, 0.15);
  EXPECT_LE(high / low, 0.40);
}

TEST(ProductObservable, ExactMatchesKron) {
  std::mt19937_64 rng(10);
  Ansatz a1 = Ansatz::hardware_efficient(1, 2), a2 = Ansatz::hardware_efficient(1, 2);
  HermitianOperator g(random_hermitian_matrix(4, rng));
  ProductObservable obs(g, 1, 1);
  const Vector p1 = prepare_state(a1, random_angles(a1.param_count(), rng));
  const Vector p2 = prepare_state(a2, random_angles(a2.param_count(), rng));
  Matrix r1 = reduced_state(p1, 1), r2 = reduced_state(p2, 1);
  EXPECT_NEAR(obs.exact(p1, p2), g.trace_product(testing::kron(r1, r2)), 1e-12);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

}  // namespace
}  // namespace vqsdp
