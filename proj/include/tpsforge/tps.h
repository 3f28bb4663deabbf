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

#ifndef TPSFORGE_TPS_H_
#define TPSFORGE_TPS_H_

// Explicit tensor product structures: Wedderburn block decomposition of an
// algebra, the factorization induced by a family of algebras satisfying the
// subsystem axioms, and sector decompositions of nested algebra chains.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpsforge/factorization.h"
#include "tpsforge/mat.h"
#include "tpsforge/star_algebra.h"

namespace tpsforge {

struct IrrepBlock {
  int label = 0;  // position in the block order
  int n = 0;      // multiplicity
  int d = 0;      // irrep dimension
  // (n*d)-column isometry; column c*d + a is copy c, irrep basis vector a.
  Mat isometry;
  Mat projector;  // minimal central projection of the block
};

struct IrrepDecomposition {
  std::string algebra_name;
  int support_dim = 0;
  std::vector<IrrepBlock> blocks;

  int algebra_dim() const;     // sum d^2
  int commutant_dim() const;   // sum n^2
  int total_dim() const;       // sum n*d
};

// Blocks ordered by ascending d, then descending n, then ascending trace of
// the central projector against a seeded probe. Throws InvalidArgument if a
// block is not a full matrix algebra and DegenerateDraw after 5 bad draws.
IrrepDecomposition wedderburn(const StarAlgebra& a,
                              std::uint64_t seed = kDefaultSeed,
                              const Tolerances& tol = {});

// Residual of max_B ||W^dagger B W - 1_n (x) m|| / ||B|| over the basis of
// `a`, for each block W. Zero for an exact decomposition.
double wedderburn_residual(const StarAlgebra& a, const IrrepDecomposition& w);

// Multiplicity of the spin-J irrep in N spin-1/2 particles, with J given as
// the integer 2J. Exact integer arithmetic.
long long multiplicity_formula(int n, int twice_j);

// Factorization C = (x)_i C^{d_i} induced by algebras that pass the axioms on
// the code space. Slot i carries algebras[i]. Throws AxiomError otherwise.
TPSFactorization induced_tps(std::span<const StarAlgebra> algebras,
                             const std::optional<Mat>& code_projector,
                             std::uint64_t seed = kDefaultSeed,
                             const Tolerances& tol = {});

// A_i = B_i' & B_{i-1} for i = 1..n. Throws InvalidArgument naming the first
// level whose inclusion fails.
std::vector<StarAlgebra> chain_subsystems(std::span<const StarAlgebra> chain,
                                          const Tolerances& tol = {},
                                          std::uint64_t seed = kDefaultSeed);

struct ChainSector {
  // One block label per level that was decomposed.
  std::vector<int> labels;
  // Multiplicities n_{J_k}; the first entry is the B0 multiplicity when B0 is
  // not the full algebra.
  std::vector<int> multiplicities;
  int terminal_dim = 0;
  bool nontrivial = false;  // some multiplicity > 1
  // Factors: multiplicities followed by terminal_dim.
  TPSFactorization factorization;

  int dim() const { return factorization.code_dim(); }
};

struct ChainDecomposition {
  int space_dim = 0;
  bool includes_level0 = false;  // B0 was reducible
  std::vector<ChainSector> sectors;
  std::string isometry_convention;
};

// Descends the chain B0 > B1 > ... > Bn through successive Wedderburn
// decompositions, each applied to the first copy of the previous irrep.
ChainDecomposition chain_decompose(std::span<const StarAlgebra> chain,
                                   std::uint64_t seed = kDefaultSeed,
                                   const Tolerances& tol = {});

// For every sector and level i >= 1, the dimension of B_i compressed to the
// sector must equal (prod_{k>i} n_k * d)^2, and so must the join of the
// compressed A_k (k > i) with the compressed Bn. Returns one message per
// mismatch; empty when the chain is reproduced.
std::vector<std::string> chain_round_trip(std::span<const StarAlgebra> chain,
                                          const ChainDecomposition& dec,
                                          const Tolerances& tol = {},
                                          std::uint64_t seed = kDefaultSeed);

// B0 = End(H), B_i = commutant(closure{X_1..X_i}). Each X_i must be unitary,
// traceless, square to 1 and commute with the others.
std::vector<StarAlgebra> stabilizer_chain(std::span<const Mat> x,
                                          const Tolerances& tol = {},
                                          std::uint64_t seed = kDefaultSeed);
// Same on an explicit space of dimension `dim`; an empty x gives {End(H)}.
std::vector<StarAlgebra> stabilizer_chain(std::span<const Mat> x, int dim,
                                          const Tolerances& tol = {},
                                          std::uint64_t seed = kDefaultSeed);

// Stacks the 2^k syndrome sectors into (C^2)^k (x) C^(2^(N-k)). X_i pulls
// back to sigma_z on slot i. Throws InvalidArgument if a syndrome is missing.
TPSFactorization stabilizer_syndrome_tps(std::span<const Mat> x,
                                         const ChainDecomposition& dec,
                                         const Tolerances& tol = {});

}  // namespace tpsforge

#endif  // TPSFORGE_TPS_H_
