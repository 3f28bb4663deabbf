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

#ifndef TPSFORGE_FACTORIZATION_H_
#define TPSFORGE_FACTORIZATION_H_

#include <string>
#include <vector>

#include "tpsforge/mat.h"

namespace tpsforge {

// An isometry from an abstract tensor product (x)_i C^{d_i} onto a subspace of
// the ambient space. Slot 0 is the most significant factor.
struct TPSFactorization {
  std::vector<int> factor_dims;
  Mat code_isometry;  // ambient_dim x prod(factor_dims)
  std::vector<std::string> factor_provenance;

  int factors() const { return static_cast<int>(factor_dims.size()); }
  int code_dim() const;
  int ambient_dim() const { return code_isometry.rows(); }

  // V^dagger op V.
  Mat pullback(const Mat& op) const;
  // V^dagger psi for a column vector.
  Mat pullback_state(const Mat& psi) const;
};

// Partial-trace helpers on an operator over (x)_i C^{dims[i]}.
// Tr over every slot except `slot`, divided by the complementary dimension,
// so that extract_slot(dims, slot, reconstruct_local(dims, slot, m)) == m.
Mat extract_slot(const std::vector<int>& dims, int slot, const Mat& op);
// 1 (x) ... (x) m (x) ... (x) 1 with m in `slot`.
Mat reconstruct_local(const std::vector<int>& dims, int slot, const Mat& m);
// ||op - reconstruct_local(extract_slot(op))||, zero iff op acts only on slot.
double slot_locality_residual(const std::vector<int>& dims, int slot,
                              const Mat& op);
// Pullback of `op` through `tps` followed by slot_locality_residual.
double pullback_locality_residual(const TPSFactorization& tps, int slot,
                                  const Mat& op);

}  // namespace tpsforge

#endif  // TPSFORGE_FACTORIZATION_H_
