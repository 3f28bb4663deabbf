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

#include <algorithm>
#include <cmath>
#include <string>

#include "tpsforge/linalg.h"
#include "tpsforge/star_algebra.h"
#include "tpsforge/tps.h"

namespace tpsforge {

namespace {

constexpr char kSectorRule[] =
    "candidates: minimal projections of Q, then minimal central projections of "
    "the algebra generated by Q and the centers of the projected algebras; "
    "deduplicated, rank >= 2, ordered by descending rank (ties by discovery "
    "order); first sector passing the axioms wins";

bool is_abelian(const StarAlgebra& q, const Tolerances& tol) {
  for (int i = 0; i < q.dim(); ++i) {
    for (int j = i + 1; j < q.dim(); ++j) {
      if (commutator(q.basis[i], q.basis[j]).frobenius_norm() > tol.residual_abs) return false;
    }
  }
  return true;
}

}  // namespace

SuperselectionReport superselect(std::span<const StarAlgebra> algebras,
                                 const StarAlgebra& q, const Tolerances& tol,
                                 std::uint64_t seed) {
  if (algebras.empty()) throw InvalidArgument("superselect: no algebras");
  const int d = q.space_dim;
  for (const StarAlgebra& a : algebras) {
    if (a.space_dim != d) {
      throw InvalidArgument("superselect: algebra '" + a.name + "' acts on a different space");
    }
  }
  if (!is_abelian(q, tol)) throw InvalidArgument("superselect: charge algebra is not abelian");
  Rng rng(seed);
  SuperselectionReport out;
  out.sector_rule = kSectorRule;
  const StarAlgebra allowed = commutant(q, tol, rng.fork());
  const Mat id = Mat::identity(d);
  for (const StarAlgebra& a : algebras) {
    std::vector<Mat> gens{id};
    for (const Mat& b : a.basis) gens.push_back(allowed.project(b));
    out.projected_algebras.push_back(closure(gens, tol, "Pi_Q(" + a.name + ")"));
  }

  std::vector<Mat> candidates = minimal_central_projections(q, rng.fork(), tol);
  std::vector<Mat> refine_gens(q.basis.begin(), q.basis.end());
  for (const StarAlgebra& p : out.projected_algebras) {
    const StarAlgebra z = center(p, tol, rng.fork());
    refine_gens.insert(refine_gens.end(), z.basis.begin(), z.basis.end());
  }
  const StarAlgebra refined = closure(refine_gens, tol, "charges");
  for (Mat& p : minimal_central_projections(refined, rng.fork(), tol)) {
    const bool dup = std::any_of(candidates.begin(), candidates.end(), [&](const Mat& c) {
      return distance(c, p) <= tol.residual_abs * std::sqrt(static_cast<double>(d));
    });
    if (!dup) candidates.push_back(std::move(p));
  }
  std::vector<std::pair<int, Mat>> ranked;
  for (Mat& p : candidates) {
    const int rank = static_cast<int>(std::lround(p.trace().real()));
    if (rank >= 2) ranked.emplace_back(rank, std::move(p));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  bool have_report = false;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out.sector_ranks.push_back(ranked[i].first);
  }
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const Mat& p = ranked[i].second;
    AxiomReport rep;
    try {
      rep = check_axioms(out.projected_algebras, p, tol, rng.fork());
    } catch (const InvalidArgument&) {
      continue;  // sector not invariant under some projected algebra
    }
    if (!have_report) {
      out.report = rep;
      have_report = true;
    }
    if (rep.passed()) {
      out.outcome = SuperselectionReport::Outcome::kNewTPS;
      out.chosen_sector = static_cast<int>(i);
      out.code_space = p;
      out.report = rep;
      out.factorization = induced_tps(out.projected_algebras, p, rng.fork(), tol);
      return out;
    }
  }
  out.outcome = SuperselectionReport::Outcome::kAxiomFailure;
  return out;
}

}  // namespace tpsforge
