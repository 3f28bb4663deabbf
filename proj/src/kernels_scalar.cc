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

#include "tpsforge/kernels.h"

namespace tpsforge::kernels::scalar {

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
  }
}

double norm2(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
          std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip.real() == 0.0 && aip.imag() == 0.0) continue;
      axpy(aip, b + p * n, crow, n);
    }
  }
}

}  // namespace tpsforge::kernels::scalar
