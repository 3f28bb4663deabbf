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

#include <gtest/gtest.h>

#include <complex>
#include <cstdlib>
#include <vector>

#include "tpsforge/mat.h"

namespace tpsforge::kernels {
namespace {

std::vector<cplx> random_vector(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  for (cplx& x : v) x = {rng.normal(), rng.normal()};
  return v;
}

TEST(KernelsTest, IsaNameAndTable) {
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
  EXPECT_EQ(isa_name(Isa::kAvx2), "avx2");
  EXPECT_EQ(table(Isa::kScalar).dot, &scalar::dot);
  if (!avx2_available()) {
    EXPECT_EQ(active_isa(), Isa::kScalar);
  }
}

TEST(KernelsTest, EnvironmentForcesScalar) {
  const char* env = std::getenv("TPSFORGE_SIMD");
  if (env == nullptr || std::string(env) != "scalar") GTEST_SKIP() << "TPSFORGE_SIMD unset";
  EXPECT_EQ(active_isa(), Isa::kScalar);
}

TEST(KernelsTest, ScalarDotIsConjugateLinear) {
  const cplx a[] = {{1, 2}, {0, -1}};
  const cplx b[] = {{3, 0}, {2, 5}};
  // conj(1+2i)*3 + conj(-i)*(2+5i) = 3-6i + i(2+5i) = -2-4i
  const cplx d = scalar::dot(a, b, 2);
  EXPECT_DOUBLE_EQ(d.real(), -2.0);
  EXPECT_DOUBLE_EQ(d.imag(), -4.0);
  EXPECT_DOUBLE_EQ(scalar::norm2(a, 2), 6.0);
}

TEST(KernelsTest, ScalarGemmMatchesNaiveProduct) {
  Rng rng(11);
  const std::size_t m = 3, k = 4, n = 5;
  const auto a = random_vector(m * k, rng);
  const auto b = random_vector(k * n, rng);
  std::vector<cplx> c(m * n);
  scalar::gemm(a.data(), b.data(), c.data(), m, k, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx ref = 0.0;
      for (std::size_t p = 0; p < k; ++p) ref += a[i * k + p] * b[p * n + j];
      EXPECT_NEAR(std::abs(c[i * n + j] - ref), 0.0, 1e-13);
    }
  }
}

// The vector variants must agree with the scalar reference on every length,
// including the odd tails.
class Avx2EquivalenceTest : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    if (!avx2_available()) GTEST_SKIP() << "AVX2 not available on this host";
  }
};

TEST_P(Avx2EquivalenceTest, Dot) {
  Rng rng(100 + GetParam());
  const std::size_t n = GetParam();
  const auto a = random_vector(n, rng);
  const auto b = random_vector(n, rng);
  const cplx s = scalar::dot(a.data(), b.data(), n);
  const cplx v = avx2::dot(a.data(), b.data(), n);
  EXPECT_LE(std::abs(s - v), 1e-12 * (1.0 + std::abs(s)) * std::sqrt(n + 1.0));
}

TEST_P(Avx2EquivalenceTest, Axpy) {
  Rng rng(200 + GetParam());
  const std::size_t n = GetParam();
  const auto x = random_vector(n, rng);
  auto y1 = random_vector(n, rng);
  auto y2 = y1;
  const cplx alpha{0.75, -1.25};
  scalar::axpy(alpha, x.data(), y1.data(), n);
  avx2::axpy(alpha, x.data(), y2.data(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_LE(std::abs(y1[i] - y2[i]), 1e-14);
}

TEST_P(Avx2EquivalenceTest, Norm2) {
  Rng rng(300 + GetParam());
  const std::size_t n = GetParam();
  const auto a = random_vector(n, rng);
  const double s = scalar::norm2(a.data(), n);
  EXPECT_NEAR(avx2::norm2(a.data(), n), s, 1e-12 * (1.0 + s));
}

TEST_P(Avx2EquivalenceTest, Gemm) {
  Rng rng(400 + GetParam());
  const std::size_t m = GetParam() % 7 + 1, k = GetParam(), n = GetParam() % 5 + 1;
  if (k == 0) return;
  const auto a = random_vector(m * k, rng);
  const auto b = random_vector(k * n, rng);
  std::vector<cplx> c1(m * n), c2(m * n);
  scalar::gemm(a.data(), b.data(), c1.data(), m, k, n);
  avx2::gemm(a.data(), b.data(), c2.data(), m, k, n);
  for (std::size_t i = 0; i < m * n; ++i) {
    EXPECT_LE(std::abs(c1[i] - c2[i]), 1e-12 * std::sqrt(static_cast<double>(k)) * 4);
  }
}

INSTANTIATE_TEST_SUITE_P(Lengths, Avx2EquivalenceTest,
                         ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 63, 64, 257));

TEST(KernelsTest, DispatchedMatchesScalar) {
  Rng rng(5);
  const auto a = random_vector(33, rng);
  const auto b = random_vector(33, rng);
  EXPECT_LE(std::abs(dot(a.data(), b.data(), 33) - scalar::dot(a.data(), b.data(), 33)), 1e-12);
}

}  // namespace
}  // namespace tpsforge::kernels
