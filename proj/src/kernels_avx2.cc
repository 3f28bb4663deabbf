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

// Compiled with -mavx2 -mfma when TPSFORGE_HAVE_AVX2 is defined. Nothing in
// this file may run unless kernels::avx2_available() returned true.

#include "tpsforge/kernels.h"

#if defined(TPSFORGE_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace tpsforge::kernels::avx2 {

#if defined(TPSFORGE_HAVE_AVX2)

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

// y[0..n) += alpha * x[0..n) with alpha pre-broadcast into (re, im) registers.
inline void axpy_body(__m256d ar, __m256d ai, const cplx* x, cplx* y,
                      std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(xv, ar, _mm256_mul_pd(xs, ai));
    _mm256_storeu_pd(yp + 2 * i,
                     _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
  }
  if (i < n) {
    const double a_re = _mm256_cvtsd_f64(ar), a_im = _mm256_cvtsd_f64(ai);
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + a_re * xr - a_im * xi,
            y[i].imag() + a_re * xi + a_im * xr};
  }
}

}  // namespace

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(ap + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(bp + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(ap + 2 * i + 4);
    const __m256d b1 = _mm256_loadu_pd(bp + 2 * i + 4);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
    im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(ap + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(bp + 2 * i);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
  }
  re0 = _mm256_add_pd(re0, re1);
  im0 = _mm256_add_pd(im0, im1);
  // im lanes hold (ar*bi, ai*br, ...): the imaginary part is lane0 - lane1.
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(re0);
  double im = hsum(_mm256_mul_pd(im0, sign));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  axpy_body(_mm256_set1_pd(alpha.real()), _mm256_set1_pd(alpha.imag()), x, y,
            n);
}

double norm2(const cplx* a, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(ap + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(ap + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(a0, a0, acc0);
    acc1 = _mm256_fmadd_pd(a1, a1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(ap + 2 * i);
    acc0 = _mm256_fmadd_pd(a0, a0, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += std::norm(a[i]);
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
      axpy_body(_mm256_set1_pd(aip.real()), _mm256_set1_pd(aip.imag()),
                b + p * n, crow, n);
    }
  }
}

#else  // !TPSFORGE_HAVE_AVX2

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
double norm2(const cplx* a, std::size_t n) { return scalar::norm2(a, n); }
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
          std::size_t n) {
  scalar::gemm(a, b, c, m, k, n);
}

#endif

}  // namespace tpsforge::kernels::avx2
