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

#include "tpsforge/operators.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "tpsforge/error.h"

namespace tpsforge {

namespace {

// Index 0..3 for I, X, Y, Z.
int pauli_index(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I':
      return 0;
    case 'X':
      return 1;
    case 'Y':
      return 2;
    case 'Z':
      return 3;
    default:
      throw InvalidArgument(std::string("invalid Pauli letter '") + c + "'");
  }
}

constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};

void require_qubit(int n, int i, const char* what) {
  if (n < 1) throw InvalidArgument(std::string(what) + ": need at least one qubit");
  if (i < 1 || i > n) {
    throw InvalidArgument(std::string(what) + ": qubit index " +
                          std::to_string(i) + " out of range 1.." +
                          std::to_string(n));
  }
}

}  // namespace

Axis parse_axis(std::string_view s) {
  if (s.size() == 1) {
    switch (std::tolower(static_cast<unsigned char>(s[0]))) {
      case 'x':
        return Axis::kX;
      case 'y':
        return Axis::kY;
      case 'z':
        return Axis::kZ;
    }
  }
  throw InvalidArgument("invalid axis '" + std::string(s) + "'");
}

char axis_letter(Axis a) {
  return a == Axis::kX ? 'X' : (a == Axis::kY ? 'Y' : 'Z');
}

Mat pauli(char letter) {
  switch (pauli_index(letter)) {
    case 0:
      return Mat::identity(2);
    case 1:
      return Mat{{0.0, 1.0}, {1.0, 0.0}};
    case 2:
      return Mat{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}};
    default:
      return Mat{{1.0, 0.0}, {0.0, -1.0}};
  }
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') p.coefficient = -1.0;
    ++pos;
  }
  if (pos >= text.size()) {
    throw InvalidArgument("empty Pauli string '" + std::string(text) + "'");
  }
  for (; pos < text.size(); ++pos) {
    p.letters.push_back(kLetters[pauli_index(text[pos])]);
  }
  return p;
}

std::string PauliString::str() const {
  std::string s;
  if (coefficient == cplx(1, 0)) {
    s = "+";
  } else if (coefficient == cplx(-1, 0)) {
    s = "-";
  } else if (coefficient == cplx(0, 1)) {
    s = "+i";
  } else if (coefficient == cplx(0, -1)) {
    s = "-i";
  } else {
    s = "(" + std::to_string(coefficient.real()) + "," +
        std::to_string(coefficient.imag()) + ")";
  }
  return s + letters;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.qubits() != b.qubits()) {
    throw InvalidArgument("Pauli product: length mismatch");
  }
  PauliString out;
  out.coefficient = a.coefficient * b.coefficient;
  for (int q = 0; q < a.qubits(); ++q) {
    const int x = pauli_index(a.letters[q]);
    const int y = pauli_index(b.letters[q]);
    if (x == 0 || y == 0 || x == y) {
      out.letters.push_back(kLetters[x ^ y]);
      continue;
    }
    // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    const int z = 6 - x - y;
    const bool cyclic = (y - x + 3) % 3 == 1;
    out.coefficient *= cyclic ? cplx(0, 1) : cplx(0, -1);
    out.letters.push_back(kLetters[z]);
  }
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (qubits() != other.qubits()) {
    throw InvalidArgument("Pauli commutation: length mismatch");
  }
  int anti = 0;
  for (int q = 0; q < qubits(); ++q) {
    const int x = pauli_index(letters[q]);
    const int y = pauli_index(other.letters[q]);
    if (x != 0 && y != 0 && x != y) ++anti;
  }
  return anti % 2 == 0;
}

Mat pauli_matrix(const PauliString& p) {
  if (p.letters.empty()) throw InvalidArgument("empty Pauli string");
  Mat out = Mat::identity(1);
  for (char c : p.letters) out = kron(out, pauli(c));
  out *= p.coefficient;
  return out;
}

Permutation Permutation::identity(int n, int local_dim) {
  Permutation p;
  p.local_dim = local_dim;
  p.images.resize(n);
  for (int i = 0; i < n; ++i) p.images[i] = i + 1;
  return p;
}

Permutation Permutation::from_cycles(int n,
                                     const std::vector<std::vector<int>>& cycles,
                                     int local_dim) {
  Permutation total = identity(n, local_dim);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Permutation c = identity(n, local_dim);
    const auto& cyc = *it;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const int from = cyc[k];
      const int to = cyc[(k + 1) % cyc.size()];
      if (from < 1 || from > n || to < 1 || to > n) {
        throw InvalidArgument("cycle entry out of range 1.." + std::to_string(n));
      }
      c.images[from - 1] = to;
    }
    c.validate();
    total = c.compose(total);
  }
  return total;
}

Permutation Permutation::transposition(int n, int i, int j, int local_dim) {
  return from_cycles(n, {{i, j}}, local_dim);
}

void Permutation::validate() const {
  if (local_dim < 1) throw InvalidArgument("permutation: local_dim must be >= 1");
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 1 || v > size() || seen[v - 1]) {
      throw InvalidArgument("permutation images are not a bijection");
    }
    seen[v - 1] = true;
  }
}

Permutation Permutation::inverse() const {
  validate();
  Permutation inv = identity(size(), local_dim);
  for (int i = 0; i < size(); ++i) inv.images[images[i] - 1] = i + 1;
  return inv;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) throw InvalidArgument("permutation size mismatch");
  Permutation out = identity(size(), local_dim);
  for (int i = 0; i < size(); ++i) out.images[i] = images[other.images[i] - 1];
  return out;
}

Mat permutation_matrix(const Permutation& perm) {
  perm.validate();
  const int n = perm.size();
  const int d = perm.local_dim;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  Mat out(total, total);
  std::vector<int> digits(n), moved(n);
  for (int x = 0; x < total; ++x) {
    int rem = x;
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = rem % d;
      rem /= d;
    }
    // Factor at position i moves to position pi(i).
    for (int i = 0; i < n; ++i) moved[perm.images[i] - 1] = digits[i];
    int y = 0;
    for (int k = 0; k < n; ++k) y = y * d + moved[k];
    out(y, x) = 1.0;
  }
  return out;
}

Mat single_qubit(int n, int i, const Mat& op) {
  require_qubit(n, i, "single_qubit");
  if (op.rows() != 2 || op.cols() != 2) {
    throw InvalidArgument("single_qubit: operator must be 2x2");
  }
  const int left = 1 << (i - 1);
  const int right = 1 << (n - i);
  return kron(kron(Mat::identity(left), op), Mat::identity(right));
}

Mat single_qubit(int n, int i, Axis axis) {
  return single_qubit(n, i, pauli(axis_letter(axis)));
}

Mat collective_spin(int n, Axis axis) {
  if (n < 1) throw InvalidArgument("collective_spin: need at least one qubit");
  Mat out(1 << n, 1 << n);
  for (int i = 1; i <= n; ++i) out += single_qubit(n, i, axis);
  return out;
}

Mat exchange(int n, int i, int j) {
  require_qubit(n, i, "exchange");
  require_qubit(n, j, "exchange");
  if (!(i < j)) throw InvalidArgument("exchange: need i < j");
  Mat out(1 << n, 1 << n);
  for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
    out += single_qubit(n, i, a) * single_qubit(n, j, a);
  }
  return out;
}

Mat swap_gate(int n, int i, int j) {
  require_qubit(n, i, "swap_gate");
  require_qubit(n, j, "swap_gate");
  return permutation_matrix(Permutation::transposition(n, i, j));
}

}  // namespace tpsforge
