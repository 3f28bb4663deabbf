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

#include <cstdlib>
#include <string>

namespace tpsforge::kernels {

namespace {

constexpr KernelTable kScalarTable{&scalar::dot, &scalar::axpy, &scalar::norm2,
                                   &scalar::gemm};
constexpr KernelTable kAvx2Table{&avx2::dot, &avx2::axpy, &avx2::norm2,
                                 &avx2::gemm};

Isa detect() {
  if (const char* env = std::getenv("TPSFORGE_SIMD")) {
    if (std::string(env) == "scalar") return Isa::kScalar;
  }
  return avx2_available() ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool avx2_available() {
#if defined(TPSFORGE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& table(Isa isa) {
  return isa == Isa::kAvx2 ? kAvx2Table : kScalarTable;
}

const KernelTable& active() {
  static const KernelTable& t = table(active_isa());
  return t;
}

}  // namespace tpsforge::kernels
