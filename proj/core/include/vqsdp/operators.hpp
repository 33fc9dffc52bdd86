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

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vqsdp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Absolute per-entry tolerance used for every Hermiticity check.
inline constexpr double kHermitianTolerance = 1e-10;

/// PSD threshold on the smallest eigenvalue.
inline constexpr double kPsdTolerance = 1e-9;

bool is_hermitian(const Matrix& m, double tol = kHermitianTolerance);

/// Exact entrywise equality; false on shape mismatch.
bool same_entries(const Matrix& a, const Matrix& b);

/// Largest |m_ij - conj(m_ji)| over all entries.
double hermiticity_defect(const Matrix& m);

bool is_power_of_two(long long n);

/// log2 of a power of two; throws DimensionError otherwise.
int qubit_count(long long dim);

/// Dense Hermitian matrix. Construction rejects (rather than symmetrizes)
/// inputs whose entries differ from their conjugate transpose by more than
/// kHermitianTolerance.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix entries);

  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);
  static HermitianOperator diagonal(std::span<const double> values);
  /// |i><i|
  static HermitianOperator projector(int dim, int i);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  /// Largest absolute eigenvalue.
  double spectral_norm() const;
  /// Tr[this * other], real for two Hermitian operators.
  double trace_product(const Matrix& other) const;
  HermitianOperator transpose() const;

  HermitianOperator operator+(const HermitianOperator& rhs) const;
  HermitianOperator operator-(const HermitianOperator& rhs) const;
  HermitianOperator operator*(double scale) const;

  friend bool operator==(const HermitianOperator& a, const HermitianOperator& b);

 private:
  Matrix entries_;
};

/// Choi operator Γ = Σ_ij |i><j| ⊗ Φ(|i><j|) of a linear map from N×N to
/// N'×N' matrices. Index convention: row (i, a) ↦ i * out_dim + a.
class ChoiMatrix {
 public:
  ChoiMatrix() = default;
  ChoiMatrix(int in_dim, int out_dim, Matrix entries);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const Matrix& matrix() const { return entries_; }

  bool is_hermitian(double tol = kHermitianTolerance) const;
  /// Γ as a Hermitian operator; throws HermiticityError for non-HP maps.
  HermitianOperator as_operator() const;

  friend bool operator==(const ChoiMatrix& a, const ChoiMatrix& b);

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  Matrix entries_;
};

/// Action of a linear map on the matrix unit |i><j| (zero-based).
using MatrixUnitAction = std::function<Matrix(int i, int j)>;

ChoiMatrix choi_of_map(const MatrixUnitAction& map_action, int in_dim);

/// Φ(X) = Tr_1[Γ (Xᵀ ⊗ I)].
Matrix apply_via_choi(const ChoiMatrix& choi, const Matrix& x);
HermitianOperator apply_via_choi(const ChoiMatrix& choi, const HermitianOperator& x);

/// Hilbert-Schmidt adjoint: Φ†(Y)_ij = Σ_ab Y_ab conj(Γ_(i,a),(j,b)).
Matrix adjoint_via_choi(const ChoiMatrix& choi, const Matrix& y);

/// Kraus-like map X ↦ Σ_k c_k K_k X K_k†; Hermiticity preserving for real c_k.
struct WeightedKrausMap {
  std::vector<double> weights;
  std::vector<Matrix> operators;  // each out_dim × in_dim

  int in_dim() const;
  int out_dim() const;
  Matrix apply(const Matrix& x) const;
  ChoiMatrix choi() const;
};

/// X ↦ (Tr[A_1 X], ..., Tr[A_M X]).
class DiagonalMap {
 public:
  DiagonalMap() = default;
  explicit DiagonalMap(std::vector<HermitianOperator> constraint_ops);

  int num_constraints() const { return static_cast<int>(ops_.size()); }
  int dim() const { return dim_; }
  const std::vector<HermitianOperator>& constraint_ops() const { return ops_; }
  const HermitianOperator& op(int i) const { return ops_.at(i); }

  RealVector apply(const Matrix& x) const;
  /// Σ y_i A_i
  HermitianOperator adjoint_apply(const RealVector& y) const;

  friend bool operator==(const DiagonalMap& a, const DiagonalMap& b);

 private:
  std::vector<HermitianOperator> ops_;
  int dim_ = 0;
};

/// Smallest eigenvalue by dense self-adjoint eigensolve.
double min_eigenvalue(const HermitianOperator& op);
double max_eigenvalue(const HermitianOperator& op);
bool is_psd(const HermitianOperator& op, double tol = kPsdTolerance);

/// Projection onto the PSD cone (negative eigenvalues clipped to zero).
Matrix project_psd(const Matrix& hermitian);

/// Partial trace over the first factor of a (d1·d2)-dimensional operator.
Matrix partial_trace_first(const Matrix& m, int d1, int d2);
/// Partial trace over the second factor.
Matrix partial_trace_second(const Matrix& m, int d1, int d2);

}  // namespace vqsdp
