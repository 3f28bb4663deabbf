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


#include "tpsforge/tps.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <bitset>
#include <tuple>
#include <vector>

#include "test_support.h"
#include "tpsforge/linalg.h"
#include "tpsforge/operators.h"

namespace tpsforge {
namespace {

using NdPair = std::pair<int, int>;  // (n, d)

Mat P(const std::string& s) { return pauli_matrix(PauliString::parse(s)); }

StarAlgebra collective(int n) {
  return closure(std::vector<Mat>{collective_spin(n, Axis::kX), collective_spin(n, Axis::kY),
                                  collective_spin(n, Axis::kZ)},
                 {}, "collective");
}

StarAlgebra permutations(int n, int first = 1, int last = -1) {
  if (last < 0) last = n;
  std::vector<Mat> g;
  for (int i = first; i < last; ++i) g.push_back(swap_gate(n, i, i + 1));
  return closure(g, {}, "permutations");
}

StarAlgebra qubit(int n, int i) {
  return closure(std::vector<Mat>{single_qubit(n, i, Axis::kX), single_qubit(n, i, Axis::kZ)},
                 {}, "Q" + std::to_string(i));
}

std::vector<NdPair> table(const IrrepDecomposition& w) {
  std::vector<NdPair> t;
  for (const IrrepBlock& b : w.blocks) t.push_back({b.n, b.d});
  return t;
}

// n_J for N spins by counting bitstrings: the number of weight-k strings
// minus weight-(k-1) strings, k = N/2 - J.
long long multiplicity_oracle(int n, int twice_j) {
  const int k = (n - twice_j) / 2;
  long long count_k = 0, count_km1 = 0;
  for (unsigned x = 0; x < (1u << n); ++x) {
    const int w = static_cast<int>(std::bitset<32>(x).count());
    count_k += w == k;
    count_km1 += w == k - 1;
  }
  return count_k - count_km1;
}

// Collective-spin table from the oracle, in the library's block order
// (ascending d, then descending n).
std::vector<NdPair> collective_table_oracle(int n) {
  std::vector<NdPair> t;
  for (int tj = n % 2; tj <= n; tj += 2) {
    t.push_back({static_cast<int>(multiplicity_oracle(n, tj)), tj + 1});
  }
  std::sort(t.begin(), t.end(), [](NdPair a, NdPair b) {
    return a.second != b.second ? a.second < b.second : a.first > b.first;
  });
  return t;
}

TEST(MultiplicityTest, ClosedFormMatchesCounting) {
  EXPECT_EQ(multiplicity_formula(6, 2), 9);
  EXPECT_EQ(multiplicity_formula(2, 2), 1);
  EXPECT_EQ(multiplicity_formula(4, 0), 2);
  EXPECT_EQ(multiplicity_formula(3, 1), 2);
  EXPECT_EQ(multiplicity_formula(3, 3), 1);
  for (int n = 1; n <= 12; ++n) {
    for (int tj = n % 2; tj <= n; tj += 2) {
      EXPECT_EQ(multiplicity_formula(n, tj), multiplicity_oracle(n, tj)) << n << " " << tj;
      EXPECT_EQ(multiplicity_formula(n, tj),
                testing::choose(n, (n - tj) / 2) - testing::choose(n, (n - tj) / 2 - 1));
    }
  }
  EXPECT_THROW(multiplicity_formula(4, 1), InvalidArgument);
  EXPECT_THROW(multiplicity_formula(4, 6), InvalidArgument);
  EXPECT_THROW(multiplicity_formula(0, 0), InvalidArgument);
}

TEST(WedderburnTest, FullAlgebraIsOneBlock) {
  IrrepDecomposition w = wedderburn(full_algebra(5));
  EXPECT_EQ(table(w), (std::vector<NdPair>{{1, 5}}));
}

TEST(WedderburnTest, CollectiveSpinTwoQubits) {
  IrrepDecomposition w = wedderburn(collective(2));
  EXPECT_EQ(table(w), (std::vector<NdPair>{{1, 1}, {1, 3}}));
  EXPECT_LT(wedderburn_residual(collective(2), w), 1e-10);
}

TEST(WedderburnTest, CollectiveAndPermutationTablesAreTransposed) {
  for (int n : {2, 3, 4}) {
    StarAlgebra c = collective(n);
    StarAlgebra p = permutations(n);
    IrrepDecomposition wc = wedderburn(c);
    IrrepDecomposition wp = wedderburn(p);
    EXPECT_EQ(table(wc), collective_table_oracle(n)) << "N=" << n;
    std::vector<NdPair> swapped;
    for (auto [nn, dd] : table(wc)) swapped.push_back({dd, nn});
    std::vector<NdPair> perm = table(wp);
    std::sort(swapped.begin(), swapped.end());
    std::sort(perm.begin(), perm.end());
    EXPECT_EQ(perm, swapped) << "N=" << n;
    for (const auto* w : {&wc, &wp}) {
      EXPECT_EQ(w->total_dim(), 1 << n);
    }
    EXPECT_EQ(wc.algebra_dim(), c.dim());
    EXPECT_EQ(wc.commutant_dim(), commutant(c).dim());
    EXPECT_LT(wedderburn_residual(c, wc), 1e-8);
    EXPECT_LT(wedderburn_residual(p, wp), 1e-8);
  }
}

TEST(WedderburnTest, BlockIsometriesAreOrthogonal) {
  IrrepDecomposition w = wedderburn(collective(4));
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    EXPECT_LT(isometry_defect(w.blocks[i].isometry), 1e-10);
    for (std::size_t j = i + 1; j < w.blocks.size(); ++j) {
      Mat cross = w.blocks[i].isometry.adjoint() * w.blocks[j].isometry;
      EXPECT_LT(cross.frobenius_norm(), 1e-10);
    }
  }
}

TEST(WedderburnTest, DeterministicForFixedSeed) {
  IrrepDecomposition a = wedderburn(permutations(4), 17);
  IrrepDecomposition b = wedderburn(permutations(4), 17);
  ASSERT_EQ(a.blocks.size(), b.blocks.size());
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    EXPECT_EQ(a.blocks[k].label, b.blocks[k].label);
    EXPECT_EQ(a.blocks[k].isometry, b.blocks[k].isometry);
  }
  EXPECT_EQ(table(wedderburn(permutations(4), 18)), table(a));
}

TEST(WedderburnTest, NonFactorBlockIsRejected) {
  // span{I, Z, X}: not an algebra; span_algebra skips validation, so the
  // block check catches the non-square restricted dimension.
  StarAlgebra bogus = span_algebra(std::vector<Mat>{Mat::identity(2), pauli('Z'), pauli('X')},
                                   2, "bogus");
  EXPECT_THROW(wedderburn(bogus), InvalidArgument);
}

TEST(SlotTest, ExtractReconstructRoundTrip) {
  Rng rng(3);
  const std::vector<int> dims = {2, 3, 2};
  Mat m = testing::random_matrix(3, 3, rng);
  Mat op = reconstruct_local(dims, 1, m);
  EXPECT_EQ(op.rows(), 12);
  EXPECT_LT(max_abs_diff(extract_slot(dims, 1, op), m), 1e-14);
  EXPECT_LT(slot_locality_residual(dims, 1, op), 1e-13);
  Mat other = reconstruct_local(dims, 0, pauli('X'));
  EXPECT_GT(slot_locality_residual(dims, 1, other + op), 0.5);
  EXPECT_LT(max_abs_diff(reconstruct_local(dims, 2, pauli('Z')),
                         kron(Mat::identity(6), pauli('Z'))),
            1e-15);
}

TEST(InducedTpsTest, ChiLambdaMakesBellStatesProducts) {
  std::vector<StarAlgebra> fam = {closure(std::vector<Mat>{P("YZ"), P("ZZ")}, {}, "chi"),
                                  closure(std::vector<Mat>{P("XY"), P("XX")}, {}, "lambda")};
  TPSFactorization t = induced_tps(fam, std::nullopt);
  EXPECT_EQ(t.factor_dims, (std::vector<int>{2, 2}));
  EXPECT_LT(isometry_defect(t.code_isometry), 1e-10);
  for (const char* g : {"XI", "YZ", "ZZ"}) EXPECT_LT(pullback_locality_residual(t, 0, P(g)), 1e-7);
  for (const char* g : {"XY", "XX", "IZ"}) EXPECT_LT(pullback_locality_residual(t, 1, P(g)), 1e-7);
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<std::vector<cplx>> bell = {{r, 0, 0, r}, {r, 0, 0, -r}, {0, r, r, 0},
                                               {0, r, -r, 0}};
  for (const auto& amps : bell) {
    Mat c = t.pullback_state(Mat::column(amps));
    // 2x2 coefficient matrix has zero determinant for a product state.
    EXPECT_NEAR(std::abs(c(0, 0) * c(3, 0) - c(1, 0) * c(2, 0)), 0.0, 1e-10);
  }
}

TEST(InducedTpsTest, StandardQubitsAreLocalUnitariesAway) {
  std::vector<StarAlgebra> fam = {qubit(3, 1), qubit(3, 2), qubit(3, 3)};
  TPSFactorization t = induced_tps(fam, std::nullopt);
  EXPECT_EQ(t.factor_dims, (std::vector<int>{2, 2, 2}));
  for (int i = 0; i < 3; ++i) {
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
      EXPECT_LT(pullback_locality_residual(t, i, single_qubit(3, i + 1, a)), 1e-7);
    }
  }
  // Product states map to product states: |000> pulls back to rank-one
  // reductions on every cut.
  Mat psi = Mat::zeros(8, 1);
  psi(0, 0) = 1.0;
  Mat c = t.pullback_state(psi);
  Mat m(2, 4);
  for (int k = 0; k < 8; ++k) m(k / 4, k % 4) = c(k, 0);
  auto s = singular_values(m);
  EXPECT_NEAR(s[1], 0.0, 1e-10);
}

TEST(InducedTpsTest, SymmetricTimesPermutationOnSpinOneBlock) {
  StarAlgebra coll = collective(4);
  StarAlgebra perm = permutations(4);
  IrrepDecomposition w = wedderburn(coll);
  const IrrepBlock* spin1 = nullptr;
  for (const IrrepBlock& b : w.blocks) {
    if (b.d == 3) spin1 = &b;
  }
  ASSERT_NE(spin1, nullptr);
  EXPECT_EQ(spin1->n, 3);
  std::vector<StarAlgebra> fam = {coll, perm};
  TPSFactorization t = induced_tps(fam, spin1->projector);
  EXPECT_EQ(t.factor_dims, (std::vector<int>{3, 3}));
  for (const Mat& g : {collective_spin(4, Axis::kX), collective_spin(4, Axis::kZ)}) {
    EXPECT_LT(pullback_locality_residual(t, 0, g), 1e-7 * spectral_norm(g));
  }
  EXPECT_LT(pullback_locality_residual(t, 1, swap_gate(4, 1, 2)), 1e-7);
}

TEST(InducedTpsTest, AxiomFailureCarriesReport) {
  std::vector<StarAlgebra> fam = {qubit(2, 1), qubit(2, 1)};
  try {
    induced_tps(fam, std::nullopt);
    FAIL() << "expected AxiomError";
  } catch (const AxiomError& e) {
    EXPECT_FALSE(e.report().pairwise_commute());
  }
}

std::vector<StarAlgebra> standard_chain(int n) {
  std::vector<StarAlgebra> chain;
  for (int i = 0; i <= n; ++i) {
    std::vector<Mat> gens{Mat::identity(1 << n)};
    for (int q = i + 1; q <= n; ++q) {
      gens.push_back(single_qubit(n, q, Axis::kX));
      gens.push_back(single_qubit(n, q, Axis::kZ));
    }
    chain.push_back(closure(gens, {}, "B" + std::to_string(i)));
  }
  return chain;
}

TEST(ChainTest, StandardChainGivesQubits) {
  auto chain = standard_chain(3);
  auto subs = chain_subsystems(chain);
  ASSERT_EQ(subs.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(same_span(subs[i], qubit(3, i + 1))) << i;
  ChainDecomposition dec = chain_decompose(chain);
  ASSERT_EQ(dec.sectors.size(), 1u);
  EXPECT_EQ(dec.sectors[0].factorization.factor_dims, (std::vector<int>{2, 2, 2, 1}));
  EXPECT_TRUE(chain_round_trip(chain, dec).empty());
}

TEST(ChainTest, LengthOneChain) {
  std::vector<StarAlgebra> chain = {full_algebra(4), qubit(2, 2)};
  auto subs = chain_subsystems(chain);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_TRUE(same_span(subs[0], commutant(qubit(2, 2))));
}

TEST(ChainTest, TrivialChainIsOneSector) {
  std::vector<StarAlgebra> chain = {full_algebra(4), full_algebra(4)};
  ChainDecomposition dec = chain_decompose(chain);
  ASSERT_EQ(dec.sectors.size(), 1u);
  EXPECT_EQ(dec.sectors[0].terminal_dim, 4);
  EXPECT_FALSE(dec.sectors[0].nontrivial);
}

TEST(ChainTest, InclusionViolationNamesLevel) {
  std::vector<StarAlgebra> chain = {full_algebra(4), qubit(2, 1), qubit(2, 2)};
  try {
    chain_subsystems(chain);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("level 2"), std::string::npos) << e.what();
  }
}

TEST(ChainTest, HybridTripartiteSectors) {
  const int n = 4;
  std::vector<Mat> b1;
  for (int q = 2; q <= 4; ++q) {
    b1.push_back(single_qubit(n, q, Axis::kX));
    b1.push_back(single_qubit(n, q, Axis::kZ));
  }
  std::vector<StarAlgebra> chain = {full_algebra(16, "B0"), closure(b1, {}, "B1"),
                                    permutations(n, 2, 4)};
  ChainDecomposition dec = chain_decompose(chain);
  std::vector<std::vector<int>> dims;
  int total = 0;
  for (const ChainSector& s : dec.sectors) {
    dims.push_back(s.factorization.factor_dims);
    total += s.dim();
  }
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<std::vector<int>>{{2, 2, 2}, {2, 4, 1}}));
  EXPECT_EQ(total, 16);
  EXPECT_TRUE(chain_round_trip(chain, dec).empty());
}

TEST(ChainTest, NestedSymmetricFourQubits) {
  const int n = 4;
  std::vector<Mat> halves = {swap_gate(n, 1, 2), swap_gate(n, 3, 4)};
  std::vector<StarAlgebra> chain = {permutations(n), closure(halves, {}, "S2xS2")};
  ChainDecomposition dec = chain_decompose(chain);
  EXPECT_TRUE(dec.includes_level0);
  int total = 0;
  for (const ChainSector& s : dec.sectors) {
    int prod = s.terminal_dim;
    for (int m : s.multiplicities) prod *= m;
    EXPECT_EQ(prod, s.dim());
    total += s.dim();
  }
  EXPECT_EQ(total, 16);
  EXPECT_TRUE(chain_round_trip(chain, dec).empty());
}

TEST(StabilizerTest, SingleParityCheck) {
  auto chain = stabilizer_chain(std::vector<Mat>{P("ZZ")});
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[1].dim(), 8);
  ChainDecomposition dec = chain_decompose(chain);
  ASSERT_EQ(dec.sectors.size(), 2u);
  for (const ChainSector& s : dec.sectors) EXPECT_EQ(s.dim(), 2);
  TPSFactorization t = stabilizer_syndrome_tps(std::vector<Mat>{P("ZZ")}, dec);
  EXPECT_EQ(t.factor_dims, (std::vector<int>{2, 2}));
  Mat pulled = t.pullback(P("ZZ"));
  EXPECT_LT(max_abs_diff(pulled, reconstruct_local({2, 2}, 0, pauli('Z'))), 1e-9);
}

TEST(StabilizerTest, EmptySetIsFullAlgebra) {
  auto chain = stabilizer_chain(std::vector<Mat>{}, 8);
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].dim(), 64);
  EXPECT_THROW(stabilizer_chain(std::vector<Mat>{}), InvalidArgument);
}

TEST(StabilizerTest, PreconditionsAreChecked) {
  EXPECT_THROW(stabilizer_chain(std::vector<Mat>{P("XI"), P("ZI")}), InvalidArgument);
  EXPECT_THROW(stabilizer_chain(std::vector<Mat>{P("II")}), InvalidArgument);
  EXPECT_THROW(stabilizer_chain(std::vector<Mat>{2.0 * P("ZI")}), InvalidArgument);
}

TEST(StabilizerTest, RandomStabilizerSetsSplitIntoSyndromes) {
  Rng rng(0x57AB);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + rng.below(3);
    const int k = 1 + rng.below(n);
    std::vector<Mat> x;
    for (const PauliString& p : testing::random_stabilizers(n, k, rng)) x.push_back(pauli_matrix(p));
    auto chain = stabilizer_chain(x);
    ChainDecomposition dec = chain_decompose(chain);
    ASSERT_EQ(static_cast<int>(dec.sectors.size()), 1 << k) << "trial " << trial;
    for (const ChainSector& s : dec.sectors) EXPECT_EQ(s.dim(), 1 << (n - k));
    TPSFactorization t = stabilizer_syndrome_tps(x, dec);
    std::vector<int> dims(k, 2);
    dims.push_back(1 << (n - k));
    EXPECT_EQ(t.factor_dims, dims);
    for (int i = 0; i < k; ++i) {
      EXPECT_LT(max_abs_diff(t.pullback(x[i]), reconstruct_local(dims, i, pauli('Z'))), 1e-8)
          << "trial " << trial << " X" << i + 1;
    }
  }
}

}  // namespace
}  // namespace tpsforge
