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

#ifndef TPSFORGE_STAR_ALGEBRA_H_
#define TPSFORGE_STAR_ALGEBRA_H_

// Unital *-algebras of operators on C^d, represented by a Hilbert-Schmidt
// orthonormal basis of Hermitian matrices, and the operations that derive new
// algebras from old ones: generation, commutant, center, join, intersection,
// restriction to an invariant subspace, minimal central projections, the
// subsystem axiom checks and superselection projection.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpsforge/error.h"
#include "tpsforge/factorization.h"
#include "tpsforge/mat.h"

namespace tpsforge {

struct StarAlgebra {
  int space_dim = 0;
  // HS-orthonormal and Hermitian. A *-closed span always has such a basis.
  std::vector<Mat> basis;
  bool contains_identity = true;
  std::string name;

  int dim() const { return static_cast<int>(basis.size()); }

  // Residual of the HS-orthogonal projection of m onto the span.
  double membership_residual(const Mat& m) const;
  // membership_residual(m) <= residual_abs * ||m||.
  bool contains(const Mat& m, const Tolerances& tol = {}) const;
  // HS-orthogonal projection onto the span.
  Mat project(const Mat& m) const;
  // sum_k c_k basis[k] with standard-normal c_k; Hermitian.
  Mat random_element(Rng& rng) const;

  // Checks the structural invariants: orthonormality, Hermitian basis,
  // closure under products, identity membership. Returns the worst residual.
  double structure_residual() const;
};

// Algebra spanned by `elements`, which must already span a *-closed,
// product-closed set containing the identity. Re-orthonormalizes into a
// Hermitian basis.
StarAlgebra span_algebra(std::span<const Mat> elements, int space_dim,
                         std::string name, const Tolerances& tol = {});

StarAlgebra full_algebra(int d, std::string name = "End");
StarAlgebra scalar_algebra(int d, std::string name = "scalars");

// Smallest unital *-closed product-closed subspace containing `generators`.
// Seeds the span with the identity and the Hermitian and anti-Hermitian parts
// of every generator, then multiplies newly found elements by the seeds until
// a full pass adds nothing.
StarAlgebra closure(std::span<const Mat> generators, const Tolerances& tol = {},
                    std::string name = "");

// {X : [X, B] = 0 for all B in a}.
StarAlgebra commutant(const StarAlgebra& a, const Tolerances& tol = {},
                      std::uint64_t seed = kDefaultSeed);

// a intersected with b (as spans; the result is again a *-algebra).
StarAlgebra intersection(const StarAlgebra& a, const StarAlgebra& b,
                         const Tolerances& tol = {});

// a intersected with commutant(a). Always abelian.
StarAlgebra center(const StarAlgebra& a, const Tolerances& tol = {},
                   std::uint64_t seed = kDefaultSeed);

// closure of the union of both bases.
StarAlgebra join(const StarAlgebra& a, const StarAlgebra& b,
                 const Tolerances& tol = {});
StarAlgebra join(std::span<const StarAlgebra> algebras,
                 const Tolerances& tol = {});

// Every basis element of `a` lies in span(b).
bool is_subalgebra(const StarAlgebra& a, const StarAlgebra& b,
                   const Tolerances& tol = {});
// Largest membership residual of a's basis in b (0 when a is inside b).
double inclusion_residual(const StarAlgebra& a, const StarAlgebra& b);
bool same_span(const StarAlgebra& a, const StarAlgebra& b,
               const Tolerances& tol = {});

// {W^dagger B W : B in a} for an isometry W whose range is invariant under a.
StarAlgebra restrict_to(const StarAlgebra& a, const Mat& isometry,
                        const Tolerances& tol = {});

// Orthogonal projections onto the minimal central blocks of `a`, ordered by
// ascending rank, ties by ascending trace against a seeded Hermitian probe.
// Throws DegenerateDraw after 5 failed random draws.
std::vector<Mat> minimal_central_projections(const StarAlgebra& a,
                                             std::uint64_t seed = kDefaultSeed,
                                             const Tolerances& tol = {});

struct AxiomReport {
  int code_dim = 0;
  std::vector<std::string> names;
  // Subsystem independence: pairwise commutation.
  std::vector<std::vector<bool>> commute;
  std::vector<std::vector<double>> commute_residual;
  double worst_commute_residual = 0.0;
  std::string commute_method;  // "pairwise" or "probe"
  // Factor test on the code space.
  std::vector<int> restricted_dims;
  std::vector<int> center_dims;
  std::vector<bool> each_is_factor;
  // Completeness.
  int join_dim = 0;
  int expected_dim = 0;
  std::vector<int> factor_dims;  // isqrt of restricted dims, 0 if not square
  bool completeness = false;

  bool pairwise_commute() const;
  bool all_factors() const;
  bool passed() const { return completeness; }
};

// Restricts every algebra to the code space (the range of `code_projector`,
// or the whole space) and evaluates the independence, factor and
// completeness conditions. Throws InvalidArgument naming the first algebra
// that does not leave the code space invariant.
AxiomReport check_axioms(std::span<const StarAlgebra> algebras,
                         const std::optional<Mat>& code_projector,
                         const Tolerances& tol = {},
                         std::uint64_t seed = kDefaultSeed);

// Raised by constructions that require passing axioms.
class AxiomError : public Error {
 public:
  AxiomError(const std::string& what, AxiomReport report)
      : Error(what), report_(std::move(report)) {}
  const AxiomReport& report() const { return report_; }

 private:
  AxiomReport report_;
};

struct SuperselectionReport {
  enum class Outcome { kNewTPS, kAxiomFailure };

  std::vector<StarAlgebra> projected_algebras;
  Outcome outcome = Outcome::kAxiomFailure;
  // Candidate sectors in search order (descending rank).
  std::vector<int> sector_ranks;
  int chosen_sector = -1;          // index into sector_ranks
  std::optional<Mat> code_space;   // projector onto C' for kNewTPS
  std::optional<TPSFactorization> factorization;
  AxiomReport report;              // passing sector, or the largest one
  std::string sector_rule;         // how sectors were chosen
};

// Projects each algebra onto the commutant of the abelian charge algebra q,
// regenerates, and searches the charge sectors (then the sectors refined by
// the projected algebras' centers) for a subspace of dimension >= 2 on which
// the projected algebras satisfy the axioms.
SuperselectionReport superselect(std::span<const StarAlgebra> algebras,
                                 const StarAlgebra& q,
                                 const Tolerances& tol = {},
                                 std::uint64_t seed = kDefaultSeed);

}  // namespace tpsforge

#endif  // TPSFORGE_STAR_ALGEBRA_H_
