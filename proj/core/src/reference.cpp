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

#include "vqsdp/reference.hpp"

#include <cmath>
#include <deque>

#include "json.hpp"
#include "vqsdp/errors.hpp"

namespace vqsdp {

namespace {

constexpr int kStallWindow = 50;
constexpr double kStallRatio = 0.99;

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Largest eigenvalue of the Gram matrix Tr[A_i A_j], i.e. ‖𝚽‖² on Frobenius space.
double diagonal_map_norm_sq(const DiagonalMap& map) {
  const int m = map.num_constraints();
  RealMatrix gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram(i, j) = map.op(i).trace_product(map.op(j).matrix());
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// ‖Φ‖² on Frobenius space by power iteration on Φ†Φ.
double choi_map_norm_sq(const ChoiMatrix& choi) {
  const int n = choi.in_dim();
  Matrix x = Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
  double estimate = 0.0;
  for (int it = 0; it < 500; ++it) {
    Matrix next = adjoint_via_choi(choi, apply_via_choi(choi, x));
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    next /= norm;
    const bool done = std::abs(norm - estimate) <= 1e-12 * norm;
    estimate = norm;
    x = std::move(next);
    if (done) break;
  }
  return estimate;
}

// Tracks the constraint residual and doubles the penalty when it stops shrinking.
class PenaltySchedule {
 public:
  double c() const { return c_; }
  void record(double residual) {
    history_.push_back(residual);
    if (static_cast<int>(history_.size()) > kStallWindow) {
      if (residual > kStallRatio * history_.front()) {
        c_ *= 2.0;
        history_.clear();
        return;
      }
      history_.pop_front();
    }
  }

 private:
  double c_ = 1.0;
  std::deque<double> history_;
};

}  // namespace

OracleResult oracle_solve(const SdpInstance& instance, const OracleOptions& options) {
  const StandardForm& form = instance.standard();
  if (form.c.dim() > 64) throw DimensionError("oracle_solve supports N <= 64");
  const int n = form.c.dim();
  const int m = form.constraints.num_constraints();
  const bool inequality = form.kind == ConstraintKind::Inequality || form.slack_count > 0;
  const Matrix& c_mat = form.c.matrix();
  const double map_sq = diagonal_map_norm_sq(form.constraints);

  Matrix x = Matrix::Identity(n, n) * (form.trace_bound() / n);
  RealVector z = inequality ? RealVector((form.rhs - form.constraints.apply(x)).cwiseMax(0.0)) : RealVector::Zero(m);
  RealVector y = RealVector::Zero(m);
  PenaltySchedule penalty;

  OracleResult out;
  long long iterations = 0;
  double residual = 0.0;
  double kkt = 0.0;
  while (true) {
    const double c = penalty.c();
    const double step = 1.0 / (c * (map_sq + (inequality ? 1.0 : 0.0)));
    // Projected gradient ascent on Tr[CX] - yᵀr - (c/2)‖r‖², r = 𝚽(X) + z - b.
    for (int it = 0; it < options.inner_iterations; ++it) {
      const RealVector r = form.constraints.apply(x) + z - form.rhs;
      const RealVector w = y + c * r;
      const Matrix grad_x = c_mat - form.constraints.adjoint_apply(w).matrix();
      const Matrix x_next = project_psd(hermitian_part(x + step * grad_x));
      double move = (x_next - x).norm();
      x = x_next;
      if (inequality) {
        const RealVector z_next = (z - step * w).cwiseMax(0.0);
        move = std::hypot(move, (z_next - z).norm());
        z = z_next;
      }
      ++iterations;
      if (move / step <= 0.1 * options.tolerance) break;
    }
    const RealVector r = form.constraints.apply(x) + z - form.rhs;
    y += c * r;
    residual = r.norm();
    // Natural residual of the Lagrangian at the new multipliers.
    const Matrix grad0 = c_mat - form.constraints.adjoint_apply(y).matrix();
    kkt = (x - project_psd(hermitian_part(x + grad0))).norm();
    if (inequality) kkt = std::hypot(kkt, (z - (z - y).cwiseMax(0.0)).norm());
    penalty.record(residual);
    if (!x.allFinite() || !y.allFinite()) throw OracleError("oracle diverged");
    if (residual <= options.tolerance && kkt <= options.tolerance) {
      out.converged = true;
      break;
    }
    if (iterations >= options.max_iterations) {
      throw OracleError("oracle did not converge within " + std::to_string(options.max_iterations) +
                        " iterations (residual " + std::to_string(residual) + ", kkt " + std::to_string(kkt) + ")");
    }
  }

  out.optimizer = HermitianOperator(hermitian_part(x));
  out.optimal_value = form.c.trace_product(out.optimizer.matrix());
  out.dual = y;
  out.residual = residual;
  out.kkt_residual = kkt;
  out.iterations = iterations;

  // Dual feasibility: y ≥ 0 for inequalities, then lift y_M until Φ†(y) ⪰ C.
  RealVector yd = inequality ? RealVector(y.cwiseMax(0.0)) : y;
  const double shift = -min_eigenvalue(form.constraints.adjoint_apply(yd) - form.c);
  if (shift > 0.0) yd[m - 1] += shift;
  out.dual_bound = form.rhs.dot(yd);
  return out;
}

OracleResult oracle_solve_general(const SdpInstance& instance, const OracleOptions& options) {
  const GeneralForm& form = instance.general();
  const int n = form.c.dim();
  const int mdim = form.b_op.dim();
  if (n > 16 || mdim > 16) throw DimensionError("oracle_solve_general supports N, M <= 16");
  const Matrix& c_mat = form.c.matrix();
  const Matrix& b_mat = form.b_op.matrix();
  const double map_sq = choi_map_norm_sq(form.choi);

  Matrix x = Matrix::Identity(n, n) / n;
  Matrix s = project_psd(hermitian_part(b_mat - apply_via_choi(form.choi, x)));
  Matrix y = Matrix::Zero(mdim, mdim);
  PenaltySchedule penalty;

  OracleResult out;
  long long iterations = 0;
  double residual = 0.0;
  double kkt = 0.0;
  while (true) {
    const double c = penalty.c();
    const double step = 1.0 / (c * (map_sq + 1.0));
    for (int it = 0; it < options.inner_iterations; ++it) {
      const Matrix r = apply_via_choi(form.choi, x) + s - b_mat;
      const Matrix w = y + c * r;
      const Matrix x_next = project_psd(hermitian_part(x + step * (c_mat - adjoint_via_choi(form.choi, w))));
      const Matrix s_next = project_psd(hermitian_part(s - step * w));
      const double move = std::hypot((x_next - x).norm(), (s_next - s).norm());
      x = x_next;
      s = s_next;
      ++iterations;
      if (move / step <= 0.1 * options.tolerance) break;
    }
    const Matrix r = hermitian_part(apply_via_choi(form.choi, x) + s - b_mat);
    y = hermitian_part(y + c * r);
    residual = r.norm();
    const Matrix grad0 = c_mat - adjoint_via_choi(form.choi, y);
    kkt = std::hypot((x - project_psd(hermitian_part(x + grad0))).norm(),
                     (s - project_psd(hermitian_part(s - y))).norm());
    penalty.record(residual);
    if (!x.allFinite() || !y.allFinite()) throw OracleError("oracle diverged");
    if (residual <= options.tolerance && kkt <= options.tolerance) {
      out.converged = true;
      break;
    }
    if (iterations >= options.max_iterations) {
      throw OracleError("general oracle did not converge within " + std::to_string(options.max_iterations) +
                        " iterations (residual " + std::to_string(residual) + ", kkt " + std::to_string(kkt) + ")");
    }
  }
  out.optimizer = HermitianOperator(hermitian_part(x));
  out.optimal_value = form.c.trace_product(out.optimizer.matrix());
  out.dual.resize(2 * mdim * mdim);
  for (int i = 0; i < mdim; ++i) {
    for (int j = 0; j < mdim; ++j) {
      out.dual[2 * (i * mdim + j)] = y(i, j).real();
      out.dual[2 * (i * mdim + j) + 1] = y(i, j).imag();
    }
  }
  out.residual = residual;
  out.kkt_residual = kkt;
  out.iterations = iterations;
  return out;
}

OracleResult oracle_solve_any(const SdpInstance& instance, const OracleOptions& options) {
  return instance.is_general() ? oracle_solve_general(instance, options) : oracle_solve(instance, options);
}

SdpInstance general_dual_instance(const SdpInstance& instance) {
  const GeneralForm& form = instance.general();
  const int mdim = form.b_op.dim();
  ChoiMatrix dual_choi = choi_of_map(
      [&](int i, int j) {
        Matrix unit = Matrix::Zero(mdim, mdim);
        unit(i, j) = 1.0;
        return Matrix(-adjoint_via_choi(form.choi, unit));
      },
      mdim);
  SdpInstance out;
  out.form = GeneralForm{form.b_op * -1.0, std::move(dual_choi), form.c * -1.0};
  out.metadata = {instance.metadata.name + "-dual", instance.metadata.seed, instance.metadata.generator + "/dual"};
  return out;
}

std::string oracle_result_to_json(const OracleResult& result) {
  nlohmann::ordered_json j;
  j["version"] = kOracleSchema;
  j["optimal_value"] = result.optimal_value;
  j["dual_bound"] = result.dual_bound ? nlohmann::ordered_json(*result.dual_bound) : nlohmann::ordered_json(nullptr);
  j["residual"] = result.residual;
  j["kkt_residual"] = result.kkt_residual;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["dual"] = std::vector<double>(result.dual.data(), result.dual.data() + result.dual.size());
  nlohmann::ordered_json x = nlohmann::ordered_json::array();
  const Matrix& m = result.optimizer.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    x.push_back(std::move(row));
  }
  j["optimizer"] = std::move(x);
  return j.dump(2);
}

}  // namespace vqsdp
