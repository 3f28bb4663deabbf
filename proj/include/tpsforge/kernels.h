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

#ifndef TPSFORGE_KERNELS_H_
#define TPSFORGE_KERNELS_H_

// Inner loops of the dense complex arithmetic. Every kernel has a portable
// scalar reference version and, on x86-64, an AVX2/FMA version. The variant
// used by the rest of the library is picked once at startup from the CPU
// feature bits; TPSFORGE_SIMD=scalar in the environment forces the reference
// path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace tpsforge::kernels {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Whether this binary carries the AVX2 variants and the CPU can run them.
bool avx2_available();

// Variant chosen for the process. Fixed after first call.
Isa active_isa();

// sum_i conj(a[i]) * b[i]
using DotFn = cplx (*)(const cplx* a, const cplx* b, std::size_t n);
// y[i] += alpha * x[i]
using AxpyFn = void (*)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
// sum_i |a[i]|^2
using Norm2Fn = double (*)(const cplx* a, std::size_t n);
// C (m x n) = A (m x k) * B (k x n), all row-major, C must not alias A or B.
using GemmFn = void (*)(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                        std::size_t k, std::size_t n);

struct KernelTable {
  DotFn dot;
  AxpyFn axpy;
  Norm2Fn norm2;
  GemmFn gemm;
};

const KernelTable& table(Isa isa);
const KernelTable& active();

namespace scalar {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double norm2(const cplx* a, std::size_t n);
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
          std::size_t n);
}  // namespace scalar

namespace avx2 {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double norm2(const cplx* a, std::size_t n);
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
          std::size_t n);
}  // namespace avx2

// Convenience wrappers over active().
inline cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline double norm2(const cplx* a, std::size_t n) {
  return active().norm2(a, n);
}
inline void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                 std::size_t k, std::size_t n) {
  active().gemm(a, b, c, m, k, n);
}

}  // namespace tpsforge::kernels

#endif  // TPSFORGE_KERNELS_H_
