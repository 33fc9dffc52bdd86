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

#include "vqsdp/pauli.hpp"

#include <bit>

#include "vqsdp/errors.hpp"

namespace vqsdp {

namespace {

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

Complex i_power(int k) {
  switch (k & 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace

Complex PauliMasks::phase(std::uint64_t c) const {
  Complex p = i_power(y_count);
  return (std::popcount(c & z) & 1) ? -p : p;
}

PauliMasks pauli_masks(std::string_view word) {
  if (word.size() > 62) throw DimensionError("Pauli word too long");
  PauliMasks m;
  const std::size_t n = word.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
    switch (word[k]) {
      case 'I':
        break;
      case 'X':
        m.x |= bit;
        break;
      case 'Y':
        m.x |= bit;
        m.z |= bit;
        ++m.y_count;
        break;
      case 'Z':
        m.z |= bit;
        break;
      default:
        throw ParseError(std::string("invalid Pauli letter '") + word[k] + "'");
    }
  }
  return m;
}

Matrix pauli_word_matrix(std::string_view word) {
  const PauliMasks m = pauli_masks(word);
  const std::uint64_t dim = std::uint64_t{1} << word.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t c = 0; c < dim; ++c) out(c ^ m.x, c) = m.phase(c);
  return out;
}

Matrix PauliDecomposition::to_matrix() const {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    const PauliMasks m = pauli_masks(t.word);
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(dim); ++c) {
      out(c ^ m.x, c) += t.weight * m.phase(c);
    }
  }
  return out;
}

PauliDecomposition pauli_decompose(const HermitianOperator& op) {
  const int n = qubit_count(op.dim());
  if (n > 8) throw DimensionError("pauli_decompose supports at most 8 qubits");
  const Matrix& h = op.matrix();
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t words = std::uint64_t{1} << (2 * n);

  PauliDecomposition out;
  out.num_qubits = n;
  std::string word(n, 'I');
  for (std::uint64_t code = 0; code < words; ++code) {
    // Two bits per letter, letter 0 in the most significant pair.
    for (int k = 0; k < n; ++k) word[k] = kLetters[(code >> (2 * (n - 1 - k))) & 3];
    const PauliMasks m = pauli_masks(word);
    // Tr[P H] = Σ_c phase(c) H(c, c ^ x)
    Complex acc = 0.0;
    for (std::uint64_t c = 0; c < dim; ++c) acc += m.phase(c) * h(c, c ^ m.x);
    const double w = acc.real() / static_cast<double>(dim);
    if (std::abs(w) >= kPauliPruneTolerance) out.terms.push_back({w, word});
  }
  return out;
}

}  // namespace vqsdp
