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

#ifndef TPSFORGE_ENTANGLEMENT_H_
#define TPSFORGE_ENTANGLEMENT_H_

// Entanglement relative to a chosen factorization: coordinates of a state in
// the factor basis, reduced states, von Neumann entropy and the operator
// Schmidt decomposition of a gate across a bipartition.

#include <span>
#include <vector>

#include "tpsforge/factorization.h"
#include "tpsforge/mat.h"

namespace tpsforge {

// Normalizes psi (a column vector); throws InvalidArgument on a zero vector or
// a norm more than 1e-10 away from 1 when `require_unit` is set.
Mat make_state(std::span<const cplx> amplitudes, bool require_unit = true);

// Amplitudes of V^dagger psi in the product basis, slot 0 most significant.
// Throws InvalidArgument when psi has more than 1e-8 weight outside the code
// space; the message reports that weight.
struct TensorCoords {
  std::vector<int> dims;
  std::vector<cplx> amplitudes;  // row-major over dims
};
TensorCoords to_tps_coordinates(const Mat& psi, const TPSFactorization& tps);

// Partial trace of |psi><psi| onto the factors listed in `keep` (ascending
// order in the result). keep must be a nonempty proper subset.
Mat reduced_density(const Mat& psi, const TPSFactorization& tps,
                    std::vector<int> keep);

struct Entropy {
  double nats = 0.0;
  double bits = 0.0;
};
// Eigenvalues below 1e-12 are clipped to zero. Throws InvalidArgument if rho
// is not Hermitian, has trace away from 1 by more than 1e-10 or an eigenvalue
// below -residual_abs.
Entropy entropy(const Mat& rho, const Tolerances& tol = {});

// Singular values (descending, zeros below rank_rel dropped) of the pullback
// of u realigned as a (d1^2, d2^2) matrix. For unitary u the squares sum to
// d1 * d2.
std::vector<double> operator_schmidt(const Mat& u, const TPSFactorization& tps,
                                     const Tolerances& tol = {});

}  // namespace tpsforge

#endif  // TPSFORGE_ENTANGLEMENT_H_
