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

#include "vqsdp/operators.hpp"

#include <cmath>
#include <sstream>

#include "vqsdp/errors.hpp"

namespace vqsdp {

bool same_entries(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool is_hermitian(const Matrix& m, double tol) { return hermiticity_defect(m) <= tol; }

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

int qubit_count(long long dim) {
  if (!is_power_of_two(dim)) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((1LL << n) < dim) ++n;
  return n;
}

HermitianOperator::HermitianOperator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    std::ostringstream msg;
    msg << "operator must be square, got " << entries_.rows() << "x" << entries_.cols();
    throw DimensionError(msg.str());
  }
  if (entries_.rows() == 0) throw DimensionError("operator must have positive dimension");
  const double defect = hermiticity_defect(entries_);
  if (!(defect <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |m_ij - conj(m_ji)| = " << defect << ")";
    throw HermiticityError(msg.str());
  }
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                          static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::projector(int dim, int i) {
  if (i < 0 || i >= dim) throw DimensionError("projector index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(i, i) = 1.0;
  return HermitianOperator(std::move(m));
}

double HermitianOperator::spectral_norm() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double HermitianOperator::trace_product(const Matrix& other) const {
  if (other.rows() != dim() || other.cols() != dim()) {
    throw DimensionError("trace_product dimension mismatch");
  }
  // Tr[A B] = Σ_ij A_ij B_ji
  return (entries_.array() * other.transpose().array()).sum().real();
}

HermitianOperator HermitianOperator::transpose() const {
  return HermitianOperator(entries_.transpose());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& rhs) const {
  if (rhs.dim() != dim()) throw DimensionError("operator sum dimension mismatch");
  return HermitianOperator(entries_ + rhs.entries_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& rhs) const {
  if (rhs.dim() != dim()) throw DimensionError("operator difference dimension mismatch");
  return HermitianOperator(entries_ - rhs.entries_);
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(entries_ * scale);
}

bool operator==(const HermitianOperator& a, const HermitianOperator& b) {
  return same_entries(a.entries_, b.entries_);
}

ChoiMatrix::ChoiMatrix(int in_dim, int out_dim, Matrix entries)
    : in_dim_(in_dim), out_dim_(out_dim), entries_(std::move(entries)) {
  const Eigen::Index total = static_cast<Eigen::Index>(in_dim) * out_dim;
  if (in_dim <= 0 || out_dim <= 0 || entries_.rows() != total || entries_.cols() != total) {
    throw DimensionError("Choi matrix must be (in_dim*out_dim) square");
  }
}

bool ChoiMatrix::is_hermitian(double tol) const { return vqsdp::is_hermitian(entries_, tol); }

HermitianOperator ChoiMatrix::as_operator() const { return HermitianOperator(entries_); }

bool operator==(const ChoiMatrix& a, const ChoiMatrix& b) {
  return a.in_dim_ == b.in_dim_ && a.out_dim_ == b.out_dim_ && same_entries(a.entries_, b.entries_);
}

ChoiMatrix choi_of_map(const MatrixUnitAction& map_action, int in_dim) {
  if (in_dim <= 0) throw DimensionError("choi_of_map: input dimension must be positive");
  Matrix first = map_action(0, 0);
  const Eigen::Index out = first.rows();
  if (out == 0 || first.cols() != out) {
    throw MapShapeError("choi_of_map: map output must be a non-empty square matrix");
  }
  Matrix gamma = Matrix::Zero(in_dim * out, in_dim * out);
  for (int i = 0; i < in_dim; ++i) {
    for (int j = 0; j < in_dim; ++j) {
      Matrix block = (i == 0 && j == 0) ? first : map_action(i, j);
      if (block.rows() != out || block.cols() != out) {
        std::ostringstream msg;
        msg << "choi_of_map: output for |" << i << "><" << j << "| is " << block.rows() << "x"
            << block.cols() << ", expected " << out << "x" << out;
        throw MapShapeError(msg.str());
      }
      gamma.block(i * out, j * out, out, out) = block;
    }
  }
  return ChoiMatrix(in_dim, static_cast<int>(out), std::move(gamma));
}

Matrix apply_via_choi(const ChoiMatrix& choi, const Matrix& x) {
  const int n = choi.in_dim();
  const int m = choi.out_dim();
  if (x.rows() != n || x.cols() != n) {
    throw DimensionError("apply_via_choi: operand must be in_dim x in_dim");
  }
  // Tr_1[Γ (Xᵀ ⊗ I)]_ab = Σ_ij X_ij Γ_(i,a),(j,b)
  Matrix out = Matrix::Zero(m, m);
  const Matrix& g = choi.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (x(i, j) == Complex(0.0)) continue;
      out.noalias() += x(i, j) * g.block(i * m, j * m, m, m);
    }
  }
  return out;
}

HermitianOperator apply_via_choi(const ChoiMatrix& choi, const HermitianOperator& x) {
  Matrix out = apply_via_choi(choi, x.matrix());
  // Rounding cleanup only; a genuinely non-Hermitian image still throws.
  if (!is_hermitian(out)) return HermitianOperator(std::move(out));
  Matrix sym = 0.5 * (out + out.adjoint());
  return HermitianOperator(std::move(sym));
}

Matrix adjoint_via_choi(const ChoiMatrix& choi, const Matrix& y) {
  const int n = choi.in_dim();
  const int m = choi.out_dim();
  if (y.rows() != m || y.cols() != m) {
    throw DimensionError("adjoint_via_choi: operand must be out_dim x out_dim");
  }
  Matrix out(n, n);
  const Matrix& g = choi.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = (y.array() * g.block(i * m, j * m, m, m).conjugate().array()).sum();
    }
  }
  return out;
}

int WeightedKrausMap::in_dim() const {
  return operators.empty() ? 0 : static_cast<int>(operators.front().cols());
}

int WeightedKrausMap::out_dim() const {
  return operators.empty() ? 0 : static_cast<int>(operators.front().rows());
}

Matrix WeightedKrausMap::apply(const Matrix& x) const {
  if (operators.empty() || weights.size() != operators.size()) {
    throw MapShapeError("weighted Kraus map needs matching weights and operators");
  }
  Matrix out = Matrix::Zero(out_dim(), out_dim());
  for (std::size_t k = 0; k < operators.size(); ++k) {
    out.noalias() += weights[k] * operators[k] * x * operators[k].adjoint();
  }
  return out;
}

ChoiMatrix WeightedKrausMap::choi() const {
  const int n = in_dim();
  return choi_of_map(
      [&](int i, int j) {
        Matrix unit = Matrix::Zero(n, n);
        unit(i, j) = 1.0;
        return apply(unit);
      },
      n);
}

DiagonalMap::DiagonalMap(std::vector<HermitianOperator> constraint_ops)
    : ops_(std::move(constraint_ops)) {
  if (ops_.empty()) throw DimensionError("DiagonalMap needs at least one constraint");
  dim_ = ops_.front().dim();
  for (const auto& op : ops_) {
    if (op.dim() != dim_) throw DimensionError("DiagonalMap operators must share dimension");
  }
}

RealVector DiagonalMap::apply(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("DiagonalMap::apply dimension mismatch");
  RealVector out(num_constraints());
  for (int i = 0; i < num_constraints(); ++i) out(i) = ops_[i].trace_product(x);
  return out;
}

HermitianOperator DiagonalMap::adjoint_apply(const RealVector& y) const {
  if (y.size() != num_constraints()) {
    throw DimensionError("adjoint_apply: expected " + std::to_string(num_constraints()) +
                         " multipliers, got " + std::to_string(y.size()));
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < num_constraints(); ++i) out += y(i) * ops_[i].matrix();
  return HermitianOperator(std::move(out));
}

bool operator==(const DiagonalMap& a, const DiagonalMap& b) { return a.ops_ == b.ops_; }

double min_eigenvalue(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

bool is_psd(const HermitianOperator& op, double tol) { return min_eigenvalue(op) >= -tol; }

Matrix project_psd(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  RealVector clipped = es.eigenvalues().cwiseMax(0.0);
  const Matrix& v = es.eigenvectors();
  return v * clipped.asDiagonal() * v.adjoint();
}

Matrix partial_trace_first(const Matrix& m, int d1, int d2) {
  if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
    throw DimensionError("partial_trace_first dimension mismatch");
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

Matrix partial_trace_second(const Matrix& m, int d1, int d2) {
  if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
    throw DimensionError("partial_trace_second dimension mismatch");
  }
  Matrix out(d1, d1);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
  }
  return out;
}

}  // namespace vqsdp
