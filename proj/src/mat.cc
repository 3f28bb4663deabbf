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

#include "tpsforge/mat.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpsforge/error.h"
#include "tpsforge/kernels.h"

namespace tpsforge {

void Tolerances::validate() const {
  if (!(rank_rel > 0.0) || !(residual_abs > 0.0) || !(eig_cluster_rel > 0.0)) {
    throw InvalidArgument("tolerances must be strictly positive");
  }
  if (!(rank_rel < eig_cluster_rel)) {
    throw InvalidArgument("tolerances: rank_rel must be below eig_cluster_rel");
  }
}

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix shape");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               cplx{});
}

Mat::Mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) {
      throw InvalidArgument("ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(std::span<const cplx> d) {
  const int n = static_cast<int>(d.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::column(std::span<const cplx> v) {
  Mat m(static_cast<int>(v.size()), 1);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

int Mat::dim() const {
  if (rows_ != cols_) {
    throw InvalidArgument("expected a square matrix, got " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  return rows_;
}

Mat Mat::adjoint() const {
  Mat out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

cplx Mat::trace() const {
  const int n = dim();
  cplx t = 0.0;
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double Mat::frobenius_norm() const {
  return std::sqrt(kernels::norm2(data_.data(), data_.size()));
}

Mat Mat::col_block(int first, int count) const {
  return block(0, first, rows_, count);
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > rows_ ||
      c0 + nc > cols_) {
    throw InvalidArgument("matrix block out of range");
  }
  Mat out(nr, nc);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  }
  return out;
}

void Mat::set_block(int r0, int c0, const Mat& src) {
  if (r0 < 0 || c0 < 0 || r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) {
    throw InvalidArgument("matrix block out of range");
  }
  for (int r = 0; r < src.rows_; ++r) {
    for (int c = 0; c < src.cols_; ++c) (*this)(r0 + r, c0 + c) = src(r, c);
  }
}

namespace {
void require_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("matrix shape mismatch: " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + " vs " +
                          std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
}
}  // namespace

Mat& Mat::operator+=(const Mat& other) { return add_scaled(1.0, other); }

Mat& Mat::operator-=(const Mat& other) { return add_scaled(-1.0, other); }

Mat& Mat::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Mat& Mat::add_scaled(cplx s, const Mat& other) {
  require_same_shape(*this, other);
  kernels::axpy(s, other.data(), data(), data_.size());
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(cplx s, Mat a) { return a *= s; }
Mat operator*(Mat a, cplx s) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw InvalidArgument("matrix product shape mismatch: " +
                          std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " times " +
                          std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
  Mat c(a.rows(), b.cols());
  kernels::gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (int k = 0; k < b.rows(); ++k) {
        for (int l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

Mat kron(std::span<const Mat> factors) {
  Mat out = Mat::identity(1);
  for (const Mat& f : factors) out = kron(out, f);
  return out;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

double distance(const Mat& a, const Mat& b) { return (a - b).frobenius_norm(); }

double max_abs_diff(const Mat& a, const Mat& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
  }
  return m;
}

Mat hermitian_part(const Mat& m) {
  Mat out = m + m.adjoint();
  out *= 0.5;
  return out;
}

Mat antihermitian_part(const Mat& m) {
  Mat out = m - m.adjoint();
  out *= cplx(0.0, -0.5);
  return out;
}

Mat outer(const Mat& v, const Mat& w) { return v * w.adjoint(); }

double hermiticity_defect(const Mat& m) { return distance(m, m.adjoint()); }

Mat random_hermitian(int n, Rng& rng) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const cplx z(rng.normal(), rng.normal());
      m(i, j) = z / std::sqrt(2.0);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

Mat random_unitary(int n, Rng& rng) {
  Mat g(n, n);
  for (auto& x : g.flat()) x = cplx(rng.normal(), rng.normal());
  // Gram-Schmidt on columns, twice for stability.
  Mat q = g;
  for (int c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int p = 0; p < c; ++p) {
        cplx ip = 0.0;
        for (int r = 0; r < n; ++r) ip += std::conj(q(r, p)) * q(r, c);
        for (int r = 0; r < n; ++r) q(r, c) -= ip * q(r, p);
      }
    }
    double nrm = 0.0;
    for (int r = 0; r < n; ++r) nrm += std::norm(q(r, c));
    nrm = std::sqrt(nrm);
    for (int r = 0; r < n; ++r) q(r, c) /= nrm;
  }
  return q;
}

}  // namespace tpsforge
