// Copyright 2026 The tpsforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TPSFORGE_OPERATORS_H_
#define TPSFORGE_OPERATORS_H_

// Builders for the concrete operators of qubit registers: Pauli strings,
// tensor-factor permutations, collective spin and Heisenberg exchange.
//
// Conventions: qubit indices are 1-based at this interface; qubit 1 is the
// leftmost (most significant) tensor factor.

#include <string>
#include <string_view>
#include <vector>

#include "tpsforge/mat.h"

namespace tpsforge {

enum class Axis { kX, kY, kZ };

Axis parse_axis(std::string_view s);
char axis_letter(Axis a);

// Single-qubit Pauli matrix for 'I', 'X', 'Y' or 'Z' (case-insensitive).
Mat pauli(char letter);

struct PauliString {
  std::string letters;  // over {I, X, Y, Z}, one per qubit
  cplx coefficient = 1.0;

  // Optional leading '+' or '-' followed by letters, case-insensitive.
  // Throws InvalidArgument on anything else.
  static PauliString parse(std::string_view text);

  int qubits() const { return static_cast<int>(letters.size()); }
  // "+XYZ", "-iIZ", ...
  std::string str() const;

  // Symbolic product via the single-qubit multiplication table.
  friend PauliString operator*(const PauliString& a, const PauliString& b);
  // Whether the two strings commute (even number of anticommuting slots).
  bool commutes_with(const PauliString& other) const;
};

// Kronecker product of the letters' matrices times the coefficient.
Mat pauli_matrix(const PauliString& p);

struct Permutation {
  std::vector<int> images;  // images[i-1] = pi(i), a bijection on {1..N}
  int local_dim = 2;

  static Permutation identity(int n, int local_dim = 2);
  // Product of disjoint or overlapping cycles, e.g. {{1, 2, 3}} for (1 2 3).
  // Cycles are applied right to left.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles,
                                 int local_dim = 2);
  static Permutation transposition(int n, int i, int j, int local_dim = 2);

  int size() const { return static_cast<int>(images.size()); }
  // Throws InvalidArgument unless images is a bijection on {1..N}.
  void validate() const;
  Permutation inverse() const;
  // (this o other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
};

// Unitary moving tensor factor i to position pi(i):
// |x_1 ... x_N> -> |x_{pi^-1(1)} ... x_{pi^-1(N)}>.
// matrix(pi o rho) == matrix(pi) * matrix(rho).
Mat permutation_matrix(const Permutation& perm);

// sigma_i^axis on qubit i (1-based) of an N-qubit register.
Mat single_qubit(int n, int i, Axis axis);
Mat single_qubit(int n, int i, const Mat& op);

// S^axis = sum_i sigma_i^axis (no factor 1/2).
Mat collective_spin(int n, Axis axis);

// sigma_i . sigma_j = sum_axis sigma_i^axis sigma_j^axis, 1 <= i < j <= N.
Mat exchange(int n, int i, int j);

// Exchange of two qubits (1-based).
Mat swap_gate(int n, int i, int j);

}  // namespace tpsforge

#endif  // TPSFORGE_OPERATORS_H_
