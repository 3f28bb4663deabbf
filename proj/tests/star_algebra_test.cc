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


#include "tpsforge/star_algebra.h"

#include <gtest/gtest.h>

#include <vector>

#include "test_support.h"
#include "tpsforge/linalg.h"
#include "tpsforge/operators.h"

namespace tpsforge {
namespace {

Mat P(const char* s) { return pauli_matrix(PauliString::parse(s)); }

StarAlgebra chi() { return closure(std::vector<Mat>{P("YZ"), P("ZZ")}, {}, "chi"); }
StarAlgebra lambda() { return closure(std::vector<Mat>{P("XY"), P("XX")}, {}, "lambda"); }

StarAlgebra collective(int n) {
  return closure(std::vector<Mat>{collective_spin(n, Axis::kX), collective_spin(n, Axis::kY),
                                  collective_spin(n, Axis::kZ)},
                 {}, "collective");
}

StarAlgebra permutations(int n) {
  std::vector<Mat> g;
  for (int i = 1; i < n; ++i) g.push_back(swap_gate(n, i, i + 1));
  return closure(g, {}, "permutations");
}

StarAlgebra qubit(int n, int i) {
  return closure(std::vector<Mat>{single_qubit(n, i, Axis::kX), single_qubit(n, i, Axis::kZ)},
                 {}, "Q" + std::to_string(i));
}

TEST(ClosureTest, ChiAlgebraOfExampleOne) {
  StarAlgebra a = chi();
  EXPECT_EQ(a.dim(), 4);
  for (const char* s : {"II", "XI", "YZ", "ZZ"}) EXPECT_TRUE(a.contains(P(s))) << s;
  EXPECT_FALSE(a.contains(P("IZ")));
  EXPECT_LT(a.structure_residual(), 1e-10);
  EXPECT_EQ(lambda().dim(), 4);
  EXPECT_TRUE(lambda().contains(P("IZ")));
}

TEST(ClosureTest, SmallExamples) {
  EXPECT_EQ(closure(std::vector<Mat>{Mat::identity(3)}).dim(), 1);
  EXPECT_EQ(closure(std::vector<Mat>{pauli('X'), pauli('Z')}).dim(), 4);
  EXPECT_THROW(closure(std::vector<Mat>{Mat::identity(2), Mat::identity(4)}), InvalidArgument);
  EXPECT_THROW(closure(std::vector<Mat>{Mat(2, 3)}), InvalidArgument);
  EXPECT_THROW(closure(std::vector<Mat>{}), InvalidArgument);
}

TEST(ClosureTest, NegligibleGeneratorsAreDropped) {
  std::vector<Mat> gens = {pauli('Z'), 1e-17 * pauli('X')};
  EXPECT_EQ(closure(gens).dim(), 2);
}

TEST(ClosureTest, NonHermitianGeneratorAddsAdjoint) {
  Mat raise{{0, 1}, {0, 0}};
  EXPECT_EQ(closure(std::vector<Mat>{raise}).dim(), 4);
}

TEST(ClosureTest, IsIdempotent) {
  StarAlgebra a = collective(3);
  StarAlgebra again = closure(a.basis);
  EXPECT_EQ(again.dim(), a.dim());
  EXPECT_TRUE(same_span(a, again));
}

TEST(ClosureTest, JoinOfCollectiveAndPermutationsOnThreeQubits) {
  // Both are 2-block algebras with n, d swapped: (d=4,n=1), (d=2,n=2) and
  // (d=1,n=4), (d=2,n=2). Their join is the full block algebra
  // M4 (+) (M2 (x) M2) of dimension 16 + 16 = 32.
  StarAlgebra j = join(collective(3), permutations(3));
  EXPECT_EQ(j.dim(), 32);
}

TEST(CommutantTest, Examples) {
  EXPECT_EQ(commutant(full_algebra(4)).dim(), 1);
  EXPECT_EQ(commutant(scalar_algebra(3)).dim(), 9);
  StarAlgebra c = commutant(collective(2));
  EXPECT_EQ(c.dim(), 2);
  EXPECT_TRUE(c.contains(swap_gate(2, 1, 2)));
}

TEST(CommutantTest, MatchesKroneckerOracle) {
  std::vector<std::vector<Mat>> families = {
      {P("YZ"), P("ZZ")},
      {collective_spin(3, Axis::kX), collective_spin(3, Axis::kZ)},
      {swap_gate(3, 1, 2)},
      {P("ZZI"), P("IZZ")},
  };
  for (const auto& gens : families) {
    StarAlgebra a = closure(gens);
    EXPECT_EQ(commutant(a).dim(), testing::commutant_dim_oracle(gens));
  }
}

TEST(CommutantTest, DoubleCommutantOnRandomAlgebras) {
  Rng rng(0xD0);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 0;
    std::vector<Mat> gens;
    StarAlgebra a = testing::random_block_algebra(rng, &d, &gens);
    StarAlgebra c = commutant(a);
    EXPECT_TRUE(same_span(commutant(c), a)) << "trial " << trial << " d=" << d;
    EXPECT_EQ(c.dim(), testing::commutant_dim_oracle(gens));
  }
}

TEST(CommutantTest, DoubleCommutantOfNamedAlgebras) {
  for (const StarAlgebra& a : {chi(), lambda(), collective(3), permutations(4), qubit(3, 2)}) {
    EXPECT_TRUE(same_span(commutant(commutant(a)), a)) << a.name;
  }
}

TEST(CommutantTest, IsAntitone) {
  StarAlgebra small = closure(std::vector<Mat>{collective_spin(3, Axis::kZ)});
  StarAlgebra big = collective(3);
  ASSERT_TRUE(is_subalgebra(small, big));
  EXPECT_TRUE(is_subalgebra(commutant(big), commutant(small)));
  EXPECT_FALSE(is_subalgebra(commutant(small), commutant(big)));
}

TEST(CenterTest, Examples) {
  EXPECT_EQ(center(full_algebra(3)).dim(), 1);
  StarAlgebra diag = closure(std::vector<Mat>{P("ZI"), P("IZ")});
  EXPECT_TRUE(same_span(center(diag), diag));
  EXPECT_EQ(center(collective(2)).dim(), 2);
}

TEST(IntersectionTest, ChiMeetsLambdaInScalars) {
  EXPECT_EQ(intersection(chi(), lambda()).dim(), 1);
  EXPECT_TRUE(same_span(intersection(chi(), chi()), chi()));
}

TEST(JoinTest, Examples) {
  EXPECT_EQ(join(chi(), lambda()).dim(), 16);
  EXPECT_TRUE(same_span(join(chi(), chi()), chi()));
  EXPECT_EQ(join(scalar_algebra(4), full_algebra(4)).dim(), 16);
  EXPECT_THROW(join(full_algebra(2), full_algebra(4)), InvalidArgument);
}

TEST(RestrictTest, CompressesToInvariantSubspace) {
  // Triplet space of two qubits is invariant under the collective algebra.
  Mat p = 0.5 * (Mat::identity(4) + swap_gate(2, 1, 2));
  Mat w = range_isometry(p);
  StarAlgebra r = restrict_to(collective(2), w);
  EXPECT_EQ(r.space_dim, 3);
  EXPECT_EQ(r.dim(), 9);
}

TEST(CentralProjectionTest, Examples) {
  auto full = minimal_central_projections(full_algebra(3));
  ASSERT_EQ(full.size(), 1u);
  EXPECT_LT(max_abs_diff(full[0], Mat::identity(3)), 1e-10);

  auto diag = minimal_central_projections(closure(std::vector<Mat>{pauli('Z')}));
  ASSERT_EQ(diag.size(), 2u);
  EXPECT_LT(std::abs(diag[0].trace() - 1.0) + std::abs(diag[1].trace() - 1.0), 1e-10);

  auto spin = minimal_central_projections(collective(2));
  ASSERT_EQ(spin.size(), 2u);
  EXPECT_NEAR(spin[0].trace().real(), 1.0, 1e-10);
  EXPECT_NEAR(spin[1].trace().real(), 3.0, 1e-10);
}

TEST(CentralProjectionTest, OrthogonalResolutionOfIdentity) {
  for (int n : {3, 4}) {
    auto ps = minimal_central_projections(permutations(n));
    Mat sum = Mat::zeros(1 << n, 1 << n);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      sum += ps[i];
      for (std::size_t j = 0; j < ps.size(); ++j) {
        Mat want = i == j ? ps[i] : Mat::zeros(1 << n, 1 << n);
        EXPECT_LT(max_abs_diff(ps[i] * ps[j], want), 1e-9);
      }
    }
    EXPECT_LT(max_abs_diff(sum, Mat::identity(1 << n)), 1e-9);
  }
}

TEST(CentralProjectionTest, SeedDoesNotChangeBlocks) {
  auto a = minimal_central_projections(collective(4), 1);
  auto b = minimal_central_projections(collective(4), 99);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(max_abs_diff(a[k], b[k]), 1e-8);
}

TEST(AxiomTest, ChiLambdaPass) {
  std::vector<StarAlgebra> fam = {chi(), lambda()};
  AxiomReport r = check_axioms(fam, std::nullopt);
  EXPECT_TRUE(r.pairwise_commute());
  EXPECT_TRUE(r.all_factors());
  EXPECT_TRUE(r.completeness);
  EXPECT_EQ(r.join_dim, 16);
  EXPECT_EQ(r.factor_dims, (std::vector<int>{2, 2}));
}

TEST(AxiomTest, StandardPass) {
  std::vector<StarAlgebra> fam = {qubit(2, 1), qubit(2, 2)};
  AxiomReport r = check_axioms(fam, std::nullopt);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.factor_dims, (std::vector<int>{2, 2}));
}

TEST(AxiomTest, RepeatedAlgebraFails) {
  std::vector<StarAlgebra> fam = {chi(), chi()};
  AxiomReport r = check_axioms(fam, std::nullopt);
  EXPECT_FALSE(r.pairwise_commute());
  EXPECT_FALSE(r.completeness);
}

TEST(AxiomTest, MissingFactorIsIncomplete) {
  std::vector<StarAlgebra> fam = {qubit(3, 1), qubit(3, 2)};
  AxiomReport r = check_axioms(fam, std::nullopt);
  EXPECT_TRUE(r.pairwise_commute());
  EXPECT_TRUE(r.all_factors());
  EXPECT_FALSE(r.completeness);
}

TEST(AxiomTest, CodeSpaceRestriction) {
  // On the triplet, collective and scalars: collective is a factor M3.
  Mat p = 0.5 * (Mat::identity(4) + swap_gate(2, 1, 2));
  std::vector<StarAlgebra> fam = {collective(2)};
  AxiomReport r = check_axioms(fam, p);
  EXPECT_EQ(r.code_dim, 3);
  EXPECT_TRUE(r.completeness);
  EXPECT_EQ(r.factor_dims, (std::vector<int>{3}));
  std::vector<StarAlgebra> bad = {qubit(2, 1)};
  EXPECT_THROW(check_axioms(bad, p), InvalidArgument);
}

TEST(SuperselectTest, ChargeKillsLocalFlips) {
  std::vector<StarAlgebra> fam = {qubit(2, 1), qubit(2, 2)};
  StarAlgebra q = closure(std::vector<Mat>{collective_spin(2, Axis::kZ)}, {}, "Sz");
  SuperselectionReport r = superselect(fam, q);
  EXPECT_EQ(r.outcome, SuperselectionReport::Outcome::kAxiomFailure);
  ASSERT_EQ(r.projected_algebras.size(), 2u);
  for (const StarAlgebra& a : r.projected_algebras) {
    EXPECT_EQ(a.dim(), 2);
    EXPECT_EQ(center(a).dim(), 2);
  }
  EXPECT_TRUE(r.projected_algebras[0].contains(P("ZI")));
  EXPECT_TRUE(r.projected_algebras[1].contains(P("IZ")));
}

TEST(SuperselectTest, TrivialChargeKeepsFactorization) {
  std::vector<StarAlgebra> fam = {chi(), lambda()};
  SuperselectionReport r = superselect(fam, scalar_algebra(4));
  ASSERT_EQ(r.outcome, SuperselectionReport::Outcome::kNewTPS);
  ASSERT_TRUE(r.factorization.has_value());
  EXPECT_EQ(r.factorization->factor_dims, (std::vector<int>{2, 2}));
  EXPECT_EQ(r.factorization->code_dim(), 4);
  EXPECT_TRUE(same_span(r.projected_algebras[0], fam[0]));
}

TEST(SuperselectTest, ChiLambdaUnderLocalCharge) {
  std::vector<StarAlgebra> fam = {chi(), lambda()};
  StarAlgebra q = closure(std::vector<Mat>{P("XI")}, {}, "XI");
  SuperselectionReport r = superselect(fam, q);
  // YZ and ZZ anticommute with XI; only span{I, XI} of chi survives.
  EXPECT_EQ(r.projected_algebras[0].dim(), 2);
  EXPECT_TRUE(same_span(r.projected_algebras[1], fam[1]));
  EXPECT_FALSE(r.sector_rule.empty());
}

TEST(SuperselectTest, RejectsNonAbelianCharge) {
  std::vector<StarAlgebra> fam = {qubit(2, 1)};
  EXPECT_THROW(superselect(fam, qubit(2, 2)), InvalidArgument);
}

}  // namespace
}  // namespace tpsforge
