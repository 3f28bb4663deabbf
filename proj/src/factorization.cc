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

#include "tpsforge/factorization.h"

#include <numeric>
#include <string>

#include "tpsforge/error.h"

namespace tpsforge {

int TPSFactorization::code_dim() const {
  return std::accumulate(factor_dims.begin(), factor_dims.end(), 1,
                         std::multiplies<int>());
}

Mat TPSFactorization::pullback(const Mat& op) const {
  return code_isometry.adjoint() * (op * code_isometry);
}

Mat TPSFactorization::pullback_state(const Mat& psi) const {
  return code_isometry.adjoint() * psi;
}

namespace {

void check_dims(const std::vector<int>& dims, int slot, int total) {
  if (slot < 0 || slot >= static_cast<int>(dims.size())) {
    throw InvalidArgument("slot " + std::to_string(slot) + " out of range");
  }
  const int prod =
      std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  if (prod != total) {
    throw InvalidArgument("factor dimensions do not match operator size");
  }
}

}  // namespace

Mat extract_slot(const std::vector<int>& dims, int slot, const Mat& op) {
  const int total = op.dim();
  check_dims(dims, slot, total);
  int left = 1, right = 1;
  for (int i = 0; i < slot; ++i) left *= dims[i];
  for (int i = slot + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];
  const int d = dims[slot];
  // Index = (l * d + a) * right + r.
  Mat out(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      cplx s = 0.0;
      for (int l = 0; l < left; ++l) {
        for (int r = 0; r < right; ++r) {
          s += op((l * d + a) * right + r, (l * d + b) * right + r);
        }
      }
      out(a, b) = s / static_cast<double>(left * right);
    }
  }
  return out;
}

Mat reconstruct_local(const std::vector<int>& dims, int slot, const Mat& m) {
  int left = 1, right = 1;
  for (int i = 0; i < slot; ++i) left *= dims[i];
  for (int i = slot + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];
  return kron(kron(Mat::identity(left), m), Mat::identity(right));
}

double slot_locality_residual(const std::vector<int>& dims, int slot,
                              const Mat& op) {
  return distance(op, reconstruct_local(dims, slot, extract_slot(dims, slot, op)));
}

double pullback_locality_residual(const TPSFactorization& tps, int slot,
                                  const Mat& op) {
  return slot_locality_residual(tps.factor_dims, slot, tps.pullback(op));
}

}  // namespace tpsforge
