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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "vqsdp/operators.hpp"

namespace vqsdp::testing {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Matrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

inline Matrix random_hermitian_matrix(int dim, std::mt19937_64& rng) {
  Matrix a = random_complex(dim, dim, rng);
  return 0.5 * (a + a.adjoint());
}

inline RealVector random_angles(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  RealVector v(count);
  for (int i = 0; i < count; ++i) v[i] = u(rng);
  return v;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("vqsdp-test-" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace vqsdp::testing
