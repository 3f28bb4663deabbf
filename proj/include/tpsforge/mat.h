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

#ifndef TPSFORGE_MAT_H_
#define TPSFORGE_MAT_H_

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace tpsforge {

using cplx = std::complex<double>;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Numerical thresholds shared by every routine. All positive, and
// rank_rel < eig_cluster_rel.
struct Tolerances {
  double rank_rel = 1e-10;      // relative singular-value / residual cutoff
  double residual_abs = 1e-8;   // conjugation and idempotency residual bound
  double eig_cluster_rel = 1e-6;  // eigenvalue grouping, relative to norm

  // Throws InvalidArgument when the invariants do not hold.
  void validate() const;
};

// Dense complex matrix, row-major. Operators are square (dim() is only valid
// then); isometries and stacked linear maps use the rectangular form.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols);
  // Square matrix from nested rows.
  Mat(std::initializer_list<std::initializer_list<cplx>> rows);

  static Mat zeros(int rows, int cols) { return Mat(rows, cols); }
  static Mat identity(int n);
  static Mat diagonal(std::span<const cplx> d);
  static Mat diagonal(std::span<const double> d);
  // n x 1 column.
  static Mat column(std::span<const cplx> v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  // Side length of a square matrix; throws InvalidArgument otherwise.
  int dim() const;
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  cplx& operator()(int r, int c) { return data_[index(r, c)]; }
  const cplx& operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<cplx> flat() { return data_; }
  std::span<const cplx> flat() const { return data_; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  Mat adjoint() const;
  Mat transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  // Columns [first, first + count).
  Mat col_block(int first, int count) const;
  // Rows [r0, r0 + nr), columns [c0, c0 + nc).
  Mat block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Mat& src);

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(cplx s);
  // this += s * other
  Mat& add_scaled(cplx s, const Mat& other);

  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cplx s, Mat a);
Mat operator*(Mat a, cplx s);

Mat kron(const Mat& a, const Mat& b);
Mat kron(std::span<const Mat> factors);
// ab - ba
Mat commutator(const Mat& a, const Mat& b);
// Frobenius norm of a - b.
double distance(const Mat& a, const Mat& b);
// max |a_ij - b_ij|
double max_abs_diff(const Mat& a, const Mat& b);
// (m + m^dagger) / 2
Mat hermitian_part(const Mat& m);
// (m - m^dagger) / (2i)
Mat antihermitian_part(const Mat& m);
// |v><w| for column vectors.
Mat outer(const Mat& v, const Mat& w);
// Frobenius-norm Hermiticity defect ||m - m^dagger||.
double hermiticity_defect(const Mat& m);

// Deterministic pseudo-random source. Every random draw in the library goes
// through one of these, seeded from an explicit 64-bit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next_u64() { return engine_(); }
  // Independent seed for a sub-computation.
  std::uint64_t fork() { return engine_() ^ 0x9E3779B97F4A7C15ull; }
  int below(int n) {
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// GUE-like Hermitian matrix with standard-normal entries.
Mat random_hermitian(int n, Rng& rng);
// Haar-ish unitary from the QR of a complex Gaussian matrix.
Mat random_unitary(int n, Rng& rng);

}  // namespace tpsforge

#endif  // TPSFORGE_MAT_H_
