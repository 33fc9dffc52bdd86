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
#include <string>
#include <string_view>
#include <vector>

#include "vqsdp/operators.hpp"

namespace vqsdp {

/// One weighted Pauli word. Letter k of the word acts on qubit (n - 1 - k),
/// i.e. the leftmost letter is the most significant Kronecker factor.
struct PauliTerm {
  double weight = 0.0;
  std::string word;
};

struct PauliDecomposition {
  int num_qubits = 0;
  std::vector<PauliTerm> terms;

  /// Σ w_i P_i as a dense matrix.
  Matrix to_matrix() const;
};

/// Bit masks of a Pauli word: P|c> = i^y_count (-1)^popcount(c & z) |c ^ x>.
/// x covers the X and Y letters, z covers the Z and Y letters.
struct PauliMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int y_count = 0;

  bool is_identity() const { return x == 0 && z == 0; }
  /// Phase of P acting on basis state |c>.
  Complex phase(std::uint64_t c) const;
};

PauliMasks pauli_masks(std::string_view word);

Matrix pauli_word_matrix(std::string_view word);

/// Weights Tr[P H] / 2^n for all 4^n words, dropping |w| < 1e-12.
PauliDecomposition pauli_decompose(const HermitianOperator& op);

inline constexpr double kPauliPruneTolerance = 1e-12;

}  // namespace vqsdp
