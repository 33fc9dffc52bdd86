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

#include <json.hpp>

#include "support.hpp"
#include "vqsdp/bounds.hpp"
#include "vqsdp/errors.hpp"
#include "vqsdp/problems.hpp"
#include "vqsdp/solvers.hpp"

namespace vqsdp {
namespace {

using testing::random_angles;

TEST(Lipschitz, Examples) {
  EXPECT_DOUBLE_EQ(lip_expectation(1.0, {0.5}, 1), 1.0);
  EXPECT_DOUBLE_EQ(lip_expectation(2.0, {0.5, 0.5, 0.5, 0.5}, 4), 4.0);
  EXPECT_DOUBLE_EQ(lip_multivariate({1.0, 2.0, 0.5, 2.0}, 4), 4.0);
  EXPECT_DOUBLE_EQ(lip_vector({3.0, 4.0}), 5.0);
  EXPECT_THROW(lip_expectation(1.0, {}, 1), ParamError);
}

TEST(Lipschitz, ExpectationBoundHolds) {
  Ansatz ansatz = Ansatz::hardware_efficient(2, 2);
  std::mt19937_64 rng(1);
  HermitianOperator o(testing::random_hermitian_matrix(4, rng));
  const Observable obs(o);
  const double bound = lip_expectation(o.spectral_norm(), ansatz.generator_norms(), ansatz.param_count());
  for (int trial = 0; trial < 50; ++trial) {
    RealVector a = random_angles(ansatz.param_count(), rng), b = random_angles(ansatz.param_count(), rng);
    const double lhs = std::abs(obs.exact(prepare_state(ansatz, a)) - obs.exact(prepare_state(ansatz, b)));
    EXPECT_LE(lhs, bound * (a - b).norm() + 1e-12);
  }
}

SdpInstance instance() {
  return random_feasible_standard(4, 3, ConstraintKind::Equality, 11);
}

TEST(Smoothness, MonotoneInPenalty) {
  const SdpInstance inst = instance();
  const StandardForm& s = inst.standard();
  Ansatz ansatz = Ansatz::hardware_efficient(2, 2);
  RealVector y = RealVector::Constant(3, 0.3);
  double prev = 0.0;
  for (double c : {0.5, 1.0, 2.0, 8.0, 32.0}) {
    const double l = smoothness_ec(s, y, c, s.trace_bound(), ansatz.generator_norms(), ansatz.param_count());
    EXPECT_GT(l, prev);
    prev = l;
  }
  EXPECT_THROW(smoothness_ec(s, y, 0.0, 1.0, ansatz.generator_norms(), 1), ParamError);
  EXPECT_THROW(smoothness_ec(s, RealVector::Zero(2), 1.0, 1.0, ansatz.generator_norms(), 1), DimensionError);
}

TEST(Smoothness, SoftplusBoundAtMostDoublesWithGamma) {
  const SdpInstance inst = random_feasible_standard(4, 3, ConstraintKind::Inequality, 11);
  const StandardForm& s = inst.standard();
  Ansatz ansatz = Ansatz::hardware_efficient(2, 2);
  RealVector ybar = RealVector::Constant(2, 0.4);
  for (double gamma : {0.5, 1.0, 10.0, 100.0}) {
    const double l1 = smoothness_ic(s, ybar, gamma, ansatz.generator_norms(), ansatz.param_count());
    const double l2 = smoothness_ic(s, ybar, 2.0 * gamma, ansatz.generator_norms(), ansatz.param_count());
    EXPECT_GT(l2 / l1, 1.0);
    EXPECT_LE(l2 / l1, 2.0);
  }
}

TEST(Smoothness, EcBoundHoldsOnGradientDifferences) {
  SdpInstance inst = instance();
  const StandardForm& s = inst.standard();
  Ansatz ansatz = Ansatz::hardware_efficient(2, 1);
  EcModel model(s, ansatz, ShotPolicy::exact());
  RealVector y(3);
  y << 0.2, -0.7, 0.4;
  const double c = 2.0;
  const double bound = smoothness_ec(s, y, c, s.trace_bound(), ansatz.generator_norms(), ansatz.param_count());
  std::mt19937_64 rng(2);
  const RealVector none;
  for (int trial = 0; trial < 50; ++trial) {
    RealVector a = random_angles(ansatz.param_count(), rng), b = random_angles(ansatz.param_count(), rng);
    const RealVector ga = model.gradient_theta(a, model.expectations(a), none, y, c);
    const RealVector gb = model.gradient_theta(b, model.expectations(b), none, y, c);
    EXPECT_LE((ga - gb).norm(), bound * (a - b).norm() + 1e-10);
  }
}

TEST(Jacobian, MatchesFiniteDifferences) {
  const SdpInstance inst = instance();
  const StandardForm& s = inst.standard();
  Ansatz ansatz = Ansatz::hardware_efficient(2, 2);
  std::mt19937_64 rng(3);
  RealVector theta = random_angles(ansatz.param_count(), rng);
  const double lambda = s.trace_bound();
  RealMatrix j = constraint_jacobian(s, ansatz, theta, lambda);
  ASSERT_EQ(j.rows(), 3);
  ASSERT_EQ(j.cols(), ansatz.param_count());
  const double h = 1e-5;
  RealMatrix fd(j.rows(), j.cols());
  for (int k = 0; k < ansatz.param_count(); ++k) {
    RealVector p = theta, m = theta;
    p[k] += h;
    m[k] -= h;
    const Matrix rp = reduced_state(prepare_state(ansatz, p), 2), rm = reduced_state(prepare_state(ansatz, m), 2);
    fd.col(k) = lambda * (s.constraints.apply(rp) - s.constraints.apply(rm)) / (2.0 * h);
  }
  EXPECT_LE((j - fd).cwiseAbs().maxCoeff(), 1e-6);

  Eigen::JacobiSVD<RealMatrix> svd(fd);
  double smallest = INFINITY;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > 1e-8) smallest = std::min(smallest, svd.singularValues()[i]);
  }
  EXPECT_NEAR(min_nonzero_singular_value(j.transpose()), smallest, 1e-4);
}

TEST(Jacobian, SingularValueInequalityOnRange) {
  const SdpInstance inst = instance();
  const StandardForm& s = inst.standard();
  Ansatz ansatz = Ansatz::hardware_efficient(2, 2);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    RealVector theta = random_angles(ansatz.param_count(), rng);
    RealMatrix j = constraint_jacobian(s, ansatz, theta, s.trace_bound());
    const double nu = min_nonzero_singular_value(j.transpose());
    RealVector w(j.cols());
    for (auto& v : w) v = normal(rng);
    const RealVector v = j * w;
    EXPECT_GE((j.transpose() * v).norm(), (1.0 - 1e-9) * nu * v.norm());
  }
}

TEST(Jacobian, DegenerateThrows) {
  EXPECT_THROW(min_nonzero_singular_value(RealMatrix::Zero(3, 4)), DegenerateJacobianError);
  RealMatrix m = RealMatrix::Zero(2, 2);
  m(0, 0) = 3.0;
  EXPECT_DOUBLE_EQ(min_nonzero_singular_value(m), 3.0);
}

TEST(Diagnostics, FeasibleStartHasZeroDualRadius) {
  // Only the trace constraint: every θ satisfies it.
  StandardForm s = instance().standard();
  s.constraints = DiagonalMap({HermitianOperator::identity(4)});
  s.rhs = RealVector::Constant(1, 1.5);
  Ansatz ansatz = Ansatz::hardware_efficient(2, 1);
  std::mt19937_64 rng(5);
  RealVector theta = random_angles(ansatz.param_count(), rng);
  // The Jacobian vanishes identically here, so ν is undefined.
  EXPECT_THROW(theorem1_diagnostics(s, ansatz, theta, RealVector::Zero(1), 0.1, theta, 2.0, 3),
               DegenerateJacobianError);
  StandardForm two = instance().standard();
  Ansatz deep = Ansatz::hardware_efficient(2, 2);
  RealVector t1 = random_angles(deep.param_count(), rng);
  // Move b onto λ𝚽(θ¹) so that θ¹ is feasible.
  const Matrix rho = reduced_state(prepare_state(deep, t1), 2);
  two.rhs = two.trace_bound() * two.constraints.apply(rho);
  Theorem1Diagnostics d = theorem1_diagnostics(two, deep, t1, RealVector::Zero(3), 0.1, t1, 2.0, 4);
  EXPECT_NEAR(d.y_max, 0.0, 1e-12);
}

TEST(Diagnostics, EpsilonScheduleHalves) {
  const SdpInstance inst = instance();
  const StandardForm& s = inst.standard();
  Ansatz ansatz = Ansatz::hardware_efficient(2, 2);
  std::mt19937_64 rng(6);
  RealVector t1 = random_angles(ansatz.param_count(), rng), t = random_angles(ansatz.param_count(), rng);
  RealVector y0(3);
  y0 << 0.5, 0.0, -0.5;
  Theorem1Diagnostics d = theorem1_diagnostics(s, ansatz, t1, y0, 0.1, t, 2.0, 6);
  ASSERT_EQ(d.epsilon_k.size(), 6u);
  EXPECT_DOUBLE_EQ(d.epsilon_k[0], d.Q);
  for (std::size_t k = 1; k < d.epsilon_k.size(); ++k) EXPECT_DOUBLE_EQ(d.epsilon_k[k], d.epsilon_k[k - 1] / 2.0);
  EXPECT_GE(d.y_max, y0.norm());
  EXPECT_GT(d.nu, 0.0);
  EXPECT_GT(d.Q, 1.0);
  EXPECT_GT(d.L_f, 0.0);
  EXPECT_GT(d.L_A, 0.0);
}

TEST(BoundReport, JsonShape) {
  BoundReport r;
  r.solver = "ec";
  r.r = 8;
  r.L_h = {{"C", 1.0}, {"A_1", 2.0}};
  r.L_c_y = 3.0;
  auto doc = nlohmann::json::parse(bound_report_to_json(r));
  EXPECT_EQ(doc["version"], kBoundsSchema);
  EXPECT_EQ(doc["L_h"]["A_1"], 2.0);
  EXPECT_EQ(doc["L_c_y"], 3.0);
  EXPECT_TRUE(doc["L_gamma_ybar"].is_null());
  EXPECT_TRUE(doc["sigma2"].is_null());
}

}  // namespace
}  // namespace vqsdp
