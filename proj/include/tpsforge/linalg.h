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

#ifndef TPSFORGE_LINALG_H_
#define TPSFORGE_LINALG_H_

// Deterministic dense linear algebra on top of Mat: Hilbert-Schmidt geometry,
// Hermitian eigendecomposition, rank-revealing orthonormalization, kernels of
// stacked linear maps and unitary exponentials.

#include <span>
#include <vector>

#include "tpsforge/mat.h"

namespace tpsforge {

// trace(a^dagger b). Conjugate-symmetric; throws on shape mismatch.
cplx hs_inner(const Mat& a, const Mat& b);

// Hilbert-Schmidt orthonormal spanning set of span(ops), in input order.
// Modified Gram-Schmidt with one re-orthogonalization pass; a vector is
// dropped when its residual norm falls below rank_rel * (largest input norm).
std::vector<Mat> orthonormal_basis(std::span<const Mat> ops,
                                   const Tolerances& tol = {});

// Incrementally grown HS-orthonormal set of same-shape matrices.
class OrthonormalSpan {
 public:
  OrthonormalSpan(int rows, int cols) : rows_(rows), cols_(cols) {}

  // Orthogonalizes `m` against the current set (twice) and appends the
  // normalized residual when its norm exceeds `min_norm`. Returns whether the
  // vector was added.
  bool add(Mat m, double min_norm);
  // Variant for Hermitian inputs against a Hermitian set: projection
  // coefficients are taken real, so the stored residual stays exactly
  // Hermitian.
  bool add_hermitian(Mat m, double min_norm);
  // Same as add, with the threshold `rel` * ||m||.
  bool add_relative(const Mat& m, double rel);

  // Coefficients <b_i, m>.
  std::vector<cplx> coefficients(const Mat& m) const;
  // Orthogonal projection onto the span.
  Mat project(const Mat& m) const;
  // ||m - project(m)||.
  double residual(const Mat& m) const;

  int size() const { return static_cast<int>(basis_.size()); }
  int capacity() const { return rows_ * cols_; }
  bool full() const { return size() >= capacity(); }
  const std::vector<Mat>& basis() const { return basis_; }
  std::vector<Mat> release() && { return std::move(basis_); }

 private:
  int rows_;
  int cols_;
  std::vector<Mat> basis_;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  Mat vectors;                 // unitary, column k pairs with values[k]
};

// Eigendecomposition of a Hermitian matrix. Throws InvalidArgument when
// ||h - h^dagger|| > residual_abs * ||h||.
EigenSystem hermitian_eig(const Mat& h, const Tolerances& tol = {});

// Contiguous runs [begin, end) of ascending eigenvalues whose consecutive gaps
// stay below rel * max|value|.
struct Cluster {
  int begin;
  int end;
  int size() const { return end - begin; }
};
std::vector<Cluster> cluster_eigenvalues(std::span<const double> ascending,
                                         double rel);

// Orthonormal basis (as columns, n x k) of the joint kernel of the rows of
// `rows` (an m x n matrix, one linear functional per row). Singular values
// below rank_rel * sigma_max count as zero.
Mat null_space(const Mat& rows, const Tolerances& tol = {});

// Same, with an absolute cutoff: singular values <= `cutoff` count as zero.
// Used when the columns are already normalized and the map may vanish.
Mat null_space_below(const Mat& rows, double cutoff);

// Singular values, descending.
std::vector<double> singular_values(const Mat& m);
double spectral_norm(const Mat& m);

// exp(-i t h) for Hermitian h via its eigendecomposition.
Mat unitary_exp(const Mat& h, double t, const Tolerances& tol = {});

// ||u^dagger u - 1|| in Frobenius norm.
double unitarity_defect(const Mat& u);
// ||v^dagger v - 1|| for an isometry with v.cols() columns.
double isometry_defect(const Mat& v);

// Isometry whose columns orthonormally span range(p) for a Hermitian
// projector p. Built by column-pivoted Gram-Schmidt over the columns of p;
// output columns are ordered by ascending pivot index.
Mat range_isometry(const Mat& p, const Tolerances& tol = {});

// t (t^dagger t)^(-1/2): the isometric factor of the polar decomposition of a
// full-column-rank t.
Mat polar_isometry(const Mat& t, const Tolerances& tol = {});

// HS-orthonormal Hermitian basis of the real span of `herms` (Hermitian
// matrices of equal size). Rank is decided by a real SVD: singular values
// below rel * (largest input norm) count as zero.
std::vector<Mat> hermitian_span(std::span<const Mat> herms, double rel);

// Row-major flattening of a matrix into a column vector and back.
Mat vectorize(const Mat& m);
Mat unvectorize(const Mat& v, int rows, int cols);

}  // namespace tpsforge

#endif  // TPSFORGE_LINALG_H_
